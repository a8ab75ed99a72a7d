#include "carnot/bch.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>

#include <nlohmann/json.hpp>

#include "carnot/config.hpp"
#include "carnot/word_algebra.hpp"

namespace carnot {

namespace {

// Returns the sign needed to bring the innermost pair into increasing order;
// 0 when the bracket vanishes.
int normalize(std::vector<int>& idx) {
  const std::size_t p = idx.size();
  if (p < 2) return 1;
  if (idx[p - 2] == idx[p - 1]) return 0;
  if (idx[p - 2] > idx[p - 1]) {
    std::swap(idx[p - 2], idx[p - 1]);
    return -1;
  }
  return 1;
}

// Dynkin-Specht-Wever: a Lie element of degree p equals (1/p) times the
// right-nested rewrite of its associative expansion.
std::vector<CoeffEntry> canonical_entries(const WordSeries& lie, int min_degree) {
  std::map<std::pair<std::size_t, std::vector<int>>, Rational> merged;
  for (const auto& [w, c] : lie.terms()) {
    const int p = static_cast<int>(w.size());
    if (p < min_degree) continue;
    std::vector<int> idx(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) idx[i] = w[i] + 1;
    const int sign = normalize(idx);
    if (sign == 0) continue;
    merged[{idx.size(), idx}] += Rational(sign) * c / p;
  }
  std::vector<CoeffEntry> out;
  for (auto& [key, c] : merged)
    if (c != 0) out.push_back(CoeffEntry{key.second, c});
  return out;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::tuple<int, int, int>, std::shared_ptr<const CoeffTable>>& cache() {
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const CoeffTable>> c;
  return c;
}

std::shared_ptr<const CoeffTable> build_beta(int n, int k) {
  auto table = std::make_shared<CoeffTable>();
  table->kind = "beta";
  table->param = n;
  table->step = k;
  if (n == 1 || k < 2) return table;
  WordSeries g = WordSeries::one(k);
  for (int i = 0; i < n; ++i) g = g * exp_series(WordSeries::letter(i, k));
  table->entries = canonical_entries(log_series(g), 2);
  return table;
}

std::shared_ptr<const CoeffTable> build_gamma(int j, int k) {
  auto table = std::make_shared<CoeffTable>();
  table->kind = "gamma";
  table->param = j;
  table->step = k;
  WordSeries psi = WordSeries::letter(j - 1, k);
  for (int i = j - 2; i >= 0; --i) {
    const WordSeries x = WordSeries::letter(i, k);
    WordSeries neg_x = x * Rational(-1);
    WordSeries neg_psi = psi * Rational(-1);
    psi = log_series(exp_series(x) * exp_series(psi) * exp_series(neg_x) * exp_series(neg_psi));
  }
  Word letters(static_cast<std::size_t>(j));
  for (int i = 0; i < j; ++i) letters[i] = i;
  psi -= right_nested(letters, k);
  table->entries = canonical_entries(psi, j + 1);
  return table;
}

template <class Build>
std::shared_ptr<const CoeffTable> memoized(int kind, int param, int k, Build build) {
  const auto key = std::make_tuple(kind, param, k);
  {
    std::lock_guard lock(cache_mutex());
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
  }
  auto table = build();
  std::lock_guard lock(cache_mutex());
  return cache().emplace(key, std::move(table)).first->second;
}

}  // namespace

Rational CoeffTable::coefficient(const std::vector<int>& idx) const {
  std::vector<int> key = idx;
  const int sign = normalize(key);
  if (sign == 0) return 0;
  auto it = std::find_if(entries.begin(), entries.end(), [&](const CoeffEntry& e) { return e.idx == key; });
  if (it == entries.end()) return 0;
  return sign * it->coeff;
}

std::string CoeffTable::to_json() const {
  nlohmann::json doc;
  doc["kind"] = kind;
  doc[kind == "beta" ? "N" : "j"] = param;
  doc["k"] = step;
  nlohmann::json entries_json = nlohmann::json::array();
  for (const auto& e : entries) entries_json.push_back({{"idx", e.idx}, {"coeff", to_string(e.coeff)}});
  doc["entries"] = entries_json;
  return doc.dump();
}

std::shared_ptr<const CoeffTable> beta_table(int n_factors, int k) {
  if (n_factors < 1 || k < 1) throw Error(ErrorKind::UnsupportedParams, "beta table needs N >= 1 and k >= 1");
  require_workload(saturating_pow(static_cast<std::size_t>(n_factors), static_cast<std::size_t>(k)), "beta table");
  return memoized(0, n_factors, k, [&] { return build_beta(n_factors, k); });
}

std::shared_ptr<const CoeffTable> gamma_table(int j, int k) {
  if (j < 2 || j > k)
    throw Error(ErrorKind::ArityOutOfRange,
                "gamma table needs 2 <= j <= k, got j=" + std::to_string(j) + " k=" + std::to_string(k));
  require_workload(saturating_pow(static_cast<std::size_t>(j), static_cast<std::size_t>(k)), "gamma table");
  return memoized(1, j, k, [&] { return build_gamma(j, k); });
}

MaxCoeffs max_coeff_constants(int d1, int j, int k) {
  MaxCoeffs out{Rational(0), Rational(1)};
  // Every entry of length <= k involves at most k letters, so k letters suffice.
  const std::size_t n = std::min(saturating_pow(static_cast<std::size_t>(d1), static_cast<std::size_t>(j)),
                                 static_cast<std::size_t>(std::max(k, 1)));
  for (const auto& e : beta_table(static_cast<int>(n), k)->entries) out.beta = std::max(out.beta, Rational(abs(e.coeff)));
  if (j >= 2 && j <= k) {
    std::map<std::size_t, Rational> sums;
    for (const auto& e : gamma_table(j, k)->entries) sums[e.idx.size()] += abs(e.coeff);
    for (const auto& [len, s] : sums) out.gamma = std::max(out.gamma, s);
  }
  return out;
}

}  // namespace carnot
