#include "carnot/radical.hpp"

#include <cmath>

#include "carnot/error.hpp"

namespace carnot {

namespace {

constexpr mp_bitcnt_t kPrecisionBits = 256;

void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

Monomial add_exponents(const Monomial& a, const Monomial& b) {
  Monomial out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = static_cast<std::uint8_t>(out[i] + b[i]);
  trim(out);
  return out;
}

void accumulate(RadicalPoly& p, const Monomial& m, const Rational& c) {
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  } else if (c == 0) {
    p.erase(it);
  }
}

RadicalPoly raw_multiply(const RadicalPoly& a, const RadicalPoly& b) {
  RadicalPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) accumulate(out, add_exponents(ma, mb), ca * cb);
  return out;
}

HighPrec nth_root(const HighPrec& c, unsigned n) {
  HighPrec x = make_high_prec(std::pow(c.get_d(), 1.0 / n));
  if (c == 0) return x;
  if (x == 0) x = make_high_prec(1e-300);
  HighPrec nn = make_high_prec(static_cast<double>(n));
  for (int it = 0; it < 12; ++it) {
    HighPrec xp = make_high_prec(1.0);
    for (unsigned i = 1; i < n; ++i) xp *= x;
    x = ((nn - 1) * x + c / xp) / nn;
  }
  return x;
}

}  // namespace

HighPrec make_high_prec(double x) { return HighPrec(x, kPrecisionBits); }

HighPrec make_high_prec(const Rational& q) { return HighPrec(q, kPrecisionBits); }

Radical::Radical(const Rational& q) {
  if (q != 0) terms_.emplace(Monomial{}, q);
}

Radical::Radical(const Rational& q, std::shared_ptr<RadicalField> field) : Radical(q) {
  field_ = std::move(field);
}

Radical::Radical(RadicalPoly terms, std::shared_ptr<RadicalField> field)
    : field_(std::move(field)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

std::optional<Rational> Radical::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

HighPrec Radical::value() const {
  if (!cached_) {
    if (auto q = as_rational()) {
      cached_ = make_high_prec(*q);
    } else {
      cached_ = field_->evaluate(terms_);
    }
  }
  return *cached_;
}

double Radical::to_double() const {
  if (auto q = as_rational()) return q->get_d();
  return value().get_d();
}

int Radical::numeric_sign() const {
  if (terms_.empty()) return 0;
  return sgn(value());
}

void Radical::adopt_field(const Radical& o) {
  if (!o.field_) return;
  if (!field_) {
    field_ = o.field_;
  } else if (field_ != o.field_) {
    throw Error(ErrorKind::Internal, "radicals from different fields combined");
  }
}

Radical& Radical::operator+=(const Radical& o) {
  adopt_field(o);
  for (const auto& [m, c] : o.terms_) accumulate(terms_, m, c);
  invalidate();
  return *this;
}

Radical& Radical::operator-=(const Radical& o) {
  adopt_field(o);
  for (const auto& [m, c] : o.terms_) accumulate(terms_, m, Rational(-c));
  invalidate();
  return *this;
}

Radical& Radical::operator*=(const Radical& o) {
  adopt_field(o);
  if (terms_.empty()) return *this;
  if (o.terms_.empty()) {
    terms_.clear();
  } else if (auto q = o.as_rational()) {
    return *this *= *q;
  } else if (auto p = as_rational()) {
    terms_ = o.terms_;
    for (auto& [m, c] : terms_) c *= *p;
  } else {
    terms_ = field_->multiply(terms_, o.terms_);
  }
  invalidate();
  return *this;
}

Radical& Radical::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
  } else {
    for (auto& [m, c] : terms_) c *= q;
  }
  invalidate();
  return *this;
}

Radical Radical::operator-() const {
  Radical out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  out.invalidate();
  return out;
}

std::shared_ptr<RadicalField> RadicalField::create() {
  auto field = std::shared_ptr<RadicalField>(new RadicalField());
  field->self_ = field;
  return field;
}

std::pair<int, Radical> RadicalField::abs_root(const Radical& x, unsigned n) {
  auto self = self_.lock();
  if (x.field() && x.field() != self) throw Error(ErrorKind::Internal, "radical from a different field");
  if (n == 0) throw Error(ErrorKind::Internal, "zeroth root");
  if (x.is_zero()) return {0, Radical(Rational(0), self)};
  if (auto q = x.as_rational()) {
    int sign = sgn(*q);
    Rational magnitude = abs(*q);
    if (auto r = exact_root(magnitude, n)) return {sign, Radical(*r, self)};
  }
  HighPrec v = x.value();
  int sign = sgn(v) < 0 ? -1 : 1;
  if (n == 1) return {sign, sign < 0 ? -x : x};
  RadicalPoly radicand = x.terms();
  if (sign < 0)
    for (auto& [m, c] : radicand) c = -c;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].degree != n || gens_[i].radicand != radicand) continue;
    Monomial m(i + 1, 0);
    m[i] = 1;
    RadicalPoly p;
    p.emplace(std::move(m), Rational(1));
    return {sign, Radical(std::move(p), self)};
  }
  Generator g;
  g.degree = n;
  g.radicand = std::move(radicand);
  g.value = nth_root(abs(v), n);
  g.powers.push_back(make_high_prec(1.0));
  for (unsigned i = 1; i < n; ++i) g.powers.push_back(g.powers.back() * g.value);
  gens_.push_back(std::move(g));
  Monomial m(gens_.size(), 0);
  m[gens_.size() - 1] = 1;
  RadicalPoly p;
  p.emplace(std::move(m), Rational(1));
  return {sign, Radical(std::move(p), self)};
}

void RadicalField::reduce(RadicalPoly& p) const {
  for (std::size_t i = gens_.size(); i-- > 0;) {
    const unsigned deg = gens_[i].degree;
    bool needed = false;
    for (const auto& [m, c] : p) {
      if (m.size() > i && m[i] >= deg) {
        needed = true;
        break;
      }
    }
    if (!needed) continue;
    RadicalPoly next;
    for (const auto& [m, c] : p) {
      if (m.size() <= i || m[i] < deg) {
        accumulate(next, m, c);
        continue;
      }
      Monomial rest = m;
      unsigned q = rest[i] / deg;
      rest[i] = static_cast<std::uint8_t>(rest[i] % deg);
      trim(rest);
      RadicalPoly piece;
      piece.emplace(std::move(rest), c);
      for (unsigned r = 0; r < q; ++r) piece = raw_multiply(piece, gens_[i].radicand);
      for (const auto& [pm, pc] : piece) accumulate(next, pm, pc);
    }
    p = std::move(next);
  }
}

RadicalPoly RadicalField::multiply(const RadicalPoly& a, const RadicalPoly& b) const {
  RadicalPoly out = raw_multiply(a, b);
  reduce(out);
  return out;
}

HighPrec RadicalField::evaluate(const RadicalPoly& p) const {
  HighPrec sum = make_high_prec(0.0);
  HighPrec term = make_high_prec(0.0);
  for (const auto& [m, c] : p) {
    term = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (m[i] < gens_[i].powers.size()) {
        term *= gens_[i].powers[m[i]];
      } else {
        for (unsigned r = 0; r < m[i]; ++r) term *= gens_[i].value;
      }
    }
    sum += term;
  }
  return sum;
}

}  // namespace carnot
