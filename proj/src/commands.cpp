#include "carnot/commands.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "carnot/lattice.hpp"

namespace carnot {

using nlohmann::json;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::Internal, "SHA-256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

namespace {

std::string file_or_name(const std::string& text) {
  if (text.empty() || looks_like_builtin(text)) return text;
  std::ifstream in(text);
  if (!in) return text;
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> out;
  for (const auto& q : parse_list(text)) {
    if (q.get_den() != 1 || q <= 0) throw Error(ErrorKind::Parse, "dims must be positive integers");
    out.push_back(static_cast<int>(q.get_num().get_si()));
  }
  if (out.empty()) throw Error(ErrorKind::Parse, "empty dims");
  return out;
}

bool float_mode(const CommandOptions& o) {
  if (o.mode == "float") return true;
  if (o.mode == "rational") return false;
  throw Error(ErrorKind::Usage, "mode must be rational or float, got '" + o.mode + "'");
}

template <class S>
json scalar_json(const S& x) {
  return ScalarOps<S>::to_double(x);
}

template <class S>
json exact_json(const S& x) {
  if constexpr (std::is_same_v<S, Radical>) {
    if (auto q = x.as_rational()) return to_string(*q);
    return nullptr;
  } else if constexpr (std::is_same_v<S, Rational>) {
    return to_string(x);
  } else {
    return nullptr;
  }
}

template <class S>
json vec_json(const std::vector<S>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(scalar_json(x));
  return out;
}

template <class S>
json vec_json(const GVec<S>& v) {
  return vec_json(v.coords());
}

template <class S>
json exact_vec_json(const std::vector<S>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(exact_json(x));
  return out;
}

json constants_json(const BoxConstants& b) {
  json trace = json::array();
  for (const auto& l : b.trace)
    trace.push_back(
        {{"k", l.k}, {"T", l.T}, {"eps_hat", l.eps_hat}, {"eps_tilde", l.eps_tilde}, {"residual", l.residual}});
  return {{"dims", b.dims}, {"eps", b.eps}, {"Q", b.Q}, {"D", b.D}, {"C", b.C}, {"trace", trace}};
}

template <class S>
json set_json(const GradedAlgebra& A, const PoppMetric& P, const HorizontalSet<S>& set, const std::vector<S>& z) {
  json rows = json::array();
  for (const auto& row : set.rows) {
    json r = json::array();
    for (const auto& x : row) r.push_back(vec_json(project_layer(A, x, 1)));
    rows.push_back(r);
  }
  const AdjustCheck c = check_adjusted(A, P, set, z);
  return {{"layer", set.layer},
          {"target", vec_json(z)},
          {"rows", rows},
          {"d_com", d_com(A, set)},
          {"checks",
           {{"sum_condition", c.sum_condition},
            {"nu", c.nu},
            {"layer_norm", c.layer_norm},
            {"norm_rel_error", c.norm_rel_error},
            {"balance_rel_error", c.balance_rel_error}}}};
}

template <class S>
GVec<S> target_vector(const GradedAlgebra& A, const CommandOptions& o, const RootContext<S>& ctx, int dim) {
  const auto coords = parse_list(o.target);
  if (static_cast<int>(coords.size()) != dim)
    throw Error(ErrorKind::AlgebraMismatch, "target has " + std::to_string(coords.size()) + " coordinates, expected " +
                                                std::to_string(dim));
  (void)A;
  return lift_vec(ctx, RVec(coords));
}

template <class S>
json adjust_impl(const GradedAlgebra& A, const PoppMetric& P, const CommandOptions& o) {
  RootContext<S> ctx;
  if (o.layer > 0) {
    if (o.layer > A.step()) throw Error(ErrorKind::LayerOutOfRange, "layer " + std::to_string(o.layer));
    const GVec<S> z = target_vector(A, o, ctx, A.dim(o.layer));
    const auto set = adjust_to_layer_vector(A, P, z.coords(), o.layer, ctx);
    json out = set_json(A, P, set, z.coords());
    json errors = json::object();
    for (const auto& [l, v] : error_vectors_A(A, set)) errors[std::to_string(l)] = vec_json(v);
    out["A"] = errors;
    return out;
  }
  const GVec<S> z = target_vector(A, o, ctx, A.dim());
  const AdjustedTuple<S> t = adjust_tuple(A, P, z, ctx);
  json sets = json::array();
  for (std::size_t j = 0; j < t.sets.size(); ++j) sets.push_back(set_json(A, P, t.sets[j], t.adjusted_to[j]));
  json b = json::array();
  for (const auto& [key, v] : t.B)
    b.push_back({{"l", key.first}, {"j", key.second}, {"vector", vec_json(v)}, {"norm", layer_norm_of(P, key.first, v)}});
  return {{"target", vec_json(z)}, {"sets", sets}, {"B", b}, {"d_com_k", d_com_k(A, t)}, {"reconstructs_target", true}};
}

template <class S>
json path_impl(const GradedAlgebra& A, const PoppMetric& P, const CommandOptions& o) {
  RootContext<S> ctx;
  const GVec<S> z = target_vector(A, o, ctx, A.dim());
  const Certificate<S> c = certified_dcc_upper(A, P, z, ctx);
  json segs = json::array();
  for (const auto& s : c.path.segments) segs.push_back(vec_json(project_layer(A, s, 1)));
  if (!o.csv.empty()) {
    std::ofstream csv(o.csv);
    if (!csv) throw Error(ErrorKind::Io, "cannot write " + o.csv);
    csv << std::setprecision(17) << "segment,length";
    for (int i = 0; i < A.dim(); ++i) csv << ",x" << i + 1;
    csv << "\n";
    GVec<S> point = zero_vec<S>(A);
    double length = 0.0;
    csv << 0 << "," << 0.0;
    for (int i = 0; i < A.dim(); ++i) csv << "," << 0.0;
    csv << "\n";
    for (std::size_t n = 0; n < c.path.segments.size(); ++n) {
      point = bch_product(A, point, c.path.segments[n]);
      length += horizontal_norm(c.path.segments[n], A.dim(1));
      csv << n + 1 << "," << length;
      for (int i = 0; i < A.dim(); ++i) csv << "," << ScalarOps<S>::to_double(point[i]);
      csv << "\n";
    }
  }
  const int k = A.step();
  return {{"target", vec_json(z)},
          {"segments", segs},
          {"segment_count", c.path.segments.size()},
          {"length", c.path.length},
          {"endpoint", vec_json(c.path.endpoint)},
          {"endpoint_matches", true},
          {"endpoint_check", std::is_same_v<S, double> ? "relative 1e-9" : "exact"},
          {"d_com_k", c.d_com},
          {"dcom_bound", dcc_upper_from_dcom(k, c.d_com)},
          {"lower_bound", dcc_lower_bound(A, z)},
          {"bound", c.bound}};
}

}  // namespace

json cmd_algebra_check(const CommandOptions& o) {
  try {
    const GradedAlgebra A = resolve_algebra(o.algebra);
    validate(A);
    return {{"valid", true},
            {"name", A.name()},
            {"dims", A.dims()},
            {"step", A.step()},
            {"hausdorff_dimension", A.hausdorff_dimension()}};
  } catch (const Error& e) {
    if (exit_code_for(e.kind()) != 2) throw;
    return {{"valid", false}, {"error", std::string(kind_name(e.kind()))}, {"detail", e.what()}};
  }
}

json cmd_popp_gram(const CommandOptions& o) {
  const GradedAlgebra A = resolve_algebra(o.algebra);
  return json::parse(popp_to_json(build_popp(A)));
}

json cmd_constants(const CommandOptions& o) {
  std::vector<int> dims;
  if (!o.dims.empty()) {
    dims = parse_dims(o.dims);
  } else {
    dims = resolve_algebra(o.algebra).dims();
  }
  return constants_json(global_constants(dims));
}

json cmd_adjust(const CommandOptions& o) {
  const GradedAlgebra A = resolve_algebra(o.algebra);
  const PoppMetric P = build_popp(A);
  json out = float_mode(o) ? adjust_impl<double>(A, P, o) : adjust_impl<Radical>(A, P, o);
  out["mode"] = o.mode;
  return out;
}

json cmd_path(const CommandOptions& o) {
  const GradedAlgebra A = resolve_algebra(o.algebra);
  const PoppMetric P = build_popp(A);
  json out = float_mode(o) ? path_impl<double>(A, P, o) : path_impl<Radical>(A, P, o);
  out["mode"] = o.mode;
  return out;
}

namespace {

std::vector<Rational> sample_box(const GradedAlgebra& A, const PoppMetric& P, const std::vector<double>& eps,
                                 std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Rational> coords;
  for (int l = 1; l <= A.step(); ++l) {
    const int d = A.dim(l);
    std::vector<double> g(static_cast<std::size_t>(d));
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& x : g) {
        x = gauss(rng);
        norm += x * x;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    const double radius = eps[l - 1] * std::pow(unif(rng), 1.0 / d) * (1.0 - 1e-12);
    const DMatrix& r_inv = P.R_inv[l - 1];
    for (int i = 0; i < d; ++i) {
      double v = 0.0;
      for (int j = 0; j < d; ++j) v += r_inv[i][j] * g[j] / norm * radius;
      coords.push_back(exact_from_double(v));
    }
  }
  return coords;
}

template <class S>
void certify_sample(const GradedAlgebra& A, const PoppMetric& P, const std::vector<Rational>& coords,
                    double& bound, double& dcom) {
  RootContext<S> ctx;
  const Certificate<S> c = certified_dcc_upper(A, P, lift_vec(ctx, RVec(coords)), ctx);
  bound = c.bound;
  dcom = c.d_com;
}

}  // namespace

json cmd_box_verify(const CommandOptions& o) {
  if (o.samples < 0) throw Error(ErrorKind::Usage, "samples must be nonnegative");
  const GradedAlgebra A = resolve_algebra(o.algebra);
  const PoppMetric P = build_popp(A);
  const BoxConstants B = global_constants(A.dims());
  const bool use_float = float_mode(o);
  std::mt19937_64 rng(o.seed);
  double max_bound = 0.0;
  double max_dcom = 0.0;
  std::vector<int> histogram(10, 0);
  int over = 0;
  for (int n = 0; n < o.samples; ++n) {
    const std::vector<Rational> coords = sample_box(A, P, B.eps, rng);
    double bound = 0.0;
    double dcom = 0.0;
    try {
      if (use_float) {
        certify_sample<double>(A, P, coords, bound, dcom);
      } else {
        certify_sample<Radical>(A, P, coords, bound, dcom);
      }
    } catch (const Error& e) {
      json echo = json::array();
      for (const auto& q : coords) echo.push_back(to_string(q));
      throw Error(e.kind(), std::string(e.what()) + " at target " + echo.dump());
    }
    if (bound > 1.0) {
      ++over;
    } else {
      ++histogram[std::min(9, static_cast<int>(bound * 10.0))];
    }
    max_bound = std::max(max_bound, bound);
    max_dcom = std::max(max_dcom, dcom);
  }
  json bins = json::array();
  for (int b = 0; b < 10; ++b) bins.push_back({{"lo", b / 10.0}, {"hi", (b + 1) / 10.0}, {"count", histogram[b]}});
  return {{"algebra", A.name()},
          {"mode", o.mode},
          {"samples", o.samples},
          {"eps", B.eps},
          {"max_bound", max_bound},
          {"max_d_com_k", max_dcom},
          {"histogram", bins},
          {"above_one", over},
          {"pass", over == 0}};
}

json cmd_systole(const CommandOptions& o) {
  if (o.radius < 1) throw Error(ErrorKind::Usage, "radius must be at least 1");
  if (o.lattice.empty()) throw Error(ErrorKind::Usage, "--lattice is required");
  const Lattice L = load_lattice_file(o.lattice);
  const auto dir = std::filesystem::path(o.lattice).parent_path();
  const GradedAlgebra A = lattice_algebra(L, dir.empty() ? "." : dir.string());
  const PoppMetric P = build_popp(A);
  const BoxConstants B = global_constants(A.dims());
  const SystoleReport rep = check_systolic_inequality(A, L, P, B, o.radius);
  if (!o.csv.empty()) {
    std::ofstream csv(o.csv);
    if (!csv) throw Error(ErrorKind::Io, "cannot write " + o.csv);
    csv << std::setprecision(17) << "word,coords,lower,upper\n";
    for (const auto& e : rep.systole.all) {
      std::string word;
      for (int w : e.element.word) word += (w > 0 ? "g" : "G") + std::to_string(std::abs(w));
      std::string coords;
      for (const auto& x : e.element.log.coords()) coords += (coords.empty() ? "" : " ") + to_string(x);
      csv << word << "," << coords << "," << e.lower << "," << e.upper << "\n";
    }
  }
  json best_word = rep.systole.best.element.word;
  return {{"algebra", A.name()},
          {"radius", o.radius},
          {"elements", rep.systole.all.size()},
          {"minimizer", exact_vec_json(rep.systole.best.element.log.coords())},
          {"minimizer_word", best_word},
          {"sys_ub", rep.systole.best.upper},
          {"sys_lb_at_minimizer", rep.systole.best.lower},
          {"vol", rep.vol},
          {"Q", B.Q},
          {"C", B.C},
          {"rhs", rep.rhs},
          {"ratio", rep.systole.best.upper / rep.rhs},
          {"satisfied", rep.satisfied}};
}

json cmd_bch_tables(const CommandOptions& o) {
  if (o.k < 1) throw Error(ErrorKind::Usage, "k must be at least 1");
  json gammas = json::array();
  for (int j = 2; j <= o.k; ++j) gammas.push_back(json::parse(gamma_table(j, o.k)->to_json()));
  json maxes = json::array();
  const int d1 = o.n_factors;
  for (int j = 1; j <= o.k; ++j) {
    const MaxCoeffs m = max_coeff_constants(d1, j, o.k);
    maxes.push_back({{"d1", d1}, {"j", j}, {"beta_tilde", to_string(m.beta)}, {"gamma_tilde", to_string(m.gamma)}});
  }
  return {{"beta", json::parse(beta_table(o.n_factors, o.k)->to_json())}, {"gamma", gammas}, {"max_coeffs", maxes}};
}

json make_report(const std::string& command, const CommandOptions& o, json outputs) {
  std::ostringstream in;
  in << "command:" << command << "\nalgebra:" << file_or_name(o.algebra) << "\nlattice:" << file_or_name(o.lattice)
     << "\ndims:" << o.dims << "\ntarget:" << o.target << "\nmode:" << o.mode << "\nsamples:" << o.samples
     << "\nradius:" << o.radius << "\nlayer:" << o.layer << "\nk:" << o.k << "\nN:" << o.n_factors;
  return {{"command", command},
          {"version", kVersion},
          {"inputs_digest", sha256_hex(in.str())},
          {"seed", o.seed},
          {"outputs", std::move(outputs)}};
}

}  // namespace carnot
