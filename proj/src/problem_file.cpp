#include "qpa/problem_file.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qpa/errors.hpp"

namespace qpa {

namespace {

using json = nlohmann::json;
using Ptr = json::json_pointer;

[[noreturn]] void fail(const Ptr& at, const std::string& msg) {
  const std::string where = at.to_string();
  throw ValidationError((where.empty() ? std::string("/") : where) + ": " + msg);
}

const json& require(const json& obj, const Ptr& at, const std::string& key) {
  if (!obj.contains(key)) fail(at / key, "missing required field");
  return obj.at(key);
}

double as_real(const json& v, const Ptr& at) {
  if (!v.is_number()) fail(at, "expected a number");
  return v.get<double>();
}

long long as_int(const json& v, const Ptr& at) {
  if (!v.is_number_integer()) fail(at, "expected an integer");
  return v.get<long long>();
}

std::vector<long long> int_vector(const json& v, const Ptr& at) {
  if (!v.is_array() || v.empty()) fail(at, "expected a non-empty array of integers");
  std::vector<long long> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], at / i));
  return out;
}

}  // namespace

GridRule parse_grid_rule(const std::string& s) {
  if (s == "10L") return GridRule::TenL;
  if (s == "2Lmax+10") return GridRule::TwoLmaxPlus10;
  throw ValidationError("unknown G rule '" + s + "' (expected 10L or 2Lmax+10)");
}

SupDomain parse_sup_domain(const std::string& s) {
  if (s == "fundamental") return SupDomain::Fundamental;
  if (s == "symmetric") return SupDomain::Symmetric;
  throw ValidationError("unknown sup domain '" + s + "' (expected fundamental or symmetric)");
}

ProblemFile parse_problem(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  const Ptr root;
  if (!doc.is_object()) fail(root, "expected an object");

  const json& jP = require(doc, root, "P");
  if (!jP.is_array() || jP.empty()) fail(root / "P", "expected a non-empty array of rows");
  const auto d = static_cast<Eigen::Index>(jP.size());
  if (!jP[0].is_array() || jP[0].empty()) fail(root / "P" / 0, "expected a non-empty row");
  const auto n = static_cast<Eigen::Index>(jP[0].size());
  RealMatrix P(d, n);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Ptr row = root / "P" / static_cast<std::size_t>(i);
    if (!jP[i].is_array() || static_cast<Eigen::Index>(jP[i].size()) != n) fail(row, "rows must have equal length");
    for (Eigen::Index j = 0; j < n; ++j) P(i, j) = as_real(jP[i][j], row / static_cast<std::size_t>(j));
  }

  const json& jk = require(doc, root, "lattice");
  if (!jk.is_array()) fail(root / "lattice", "expected an array");
  std::vector<std::vector<long long>> lattice;
  for (std::size_t l = 0; l < jk.size(); ++l) {
    lattice.push_back(int_vector(jk[l], root / "lattice" / l));
    if (static_cast<Eigen::Index>(lattice.back().size()) != n)
      fail(root / "lattice" / l, "length must equal the number of columns of P");
  }

  const json& jc = require(doc, root, "coefficients");
  if (!jc.is_array()) fail(root / "coefficients", "expected an array");
  std::vector<cplx> coeffs;
  for (std::size_t l = 0; l < jc.size(); ++l) {
    const Ptr at = root / "coefficients" / l;
    if (!jc[l].is_object()) fail(at, "expected {\"re\": x, \"im\": y}");
    const double re = as_real(require(jc[l], at, "re"), at / "re");
    const double im = jc[l].contains("im") ? as_real(jc[l]["im"], at / "im") : 0.0;
    coeffs.emplace_back(re, im);
  }

  const long long N = as_int(require(doc, root, "N"), root / "N");
  const long long eta = doc.contains("eta") ? as_int(doc["eta"], root / "eta") : 1;

  const json& jd = require(doc, root, "diophantine");
  if (!jd.is_object()) fail(root / "diophantine", "expected an object");
  DiophantineParams dp{as_real(require(jd, root / "diophantine", "C_a"), root / "diophantine" / "C_a"),
                       as_real(require(jd, root / "diophantine", "tau"), root / "diophantine" / "tau")};

  std::vector<RationalMark> marks;
  if (doc.contains("rational_marks")) {
    const json& jm = doc["rational_marks"];
    if (!jm.is_array()) fail(root / "rational_marks", "expected an array");
    for (std::size_t i = 0; i < jm.size(); ++i) {
      const Ptr at = root / "rational_marks" / i;
      const auto row = as_int(require(jm[i], at, "row"), at / "row");
      const auto col = as_int(require(jm[i], at, "col"), at / "col");
      if (row < 0 || col < 0) fail(at, "row and col must be nonnegative");
      marks.push_back({static_cast<std::size_t>(row), static_cast<std::size_t>(col),
                       as_int(require(jm[i], at, "num"), at / "num"),
                       as_int(require(jm[i], at, "den"), at / "den")});
    }
  }

  std::optional<QuasiperiodicSpec> spec;
  try {
    spec = QuasiperiodicSpec::create(P, lattice, coeffs, static_cast<int>(N), dp, marks);
  } catch (const ValidationError& e) {
    fail(root, e.what());
  }

  std::vector<long long> L = int_vector(require(doc, root, "L"), root / "L");
  if (static_cast<Eigen::Index>(L.size()) != d) fail(root / "L", "length must equal the number of rows of P");

  std::optional<std::vector<long long>> G;
  std::optional<GridRule> rule;
  if (doc.contains("G")) {
    G = int_vector(doc["G"], root / "G");
    if (G->size() != L.size()) fail(root / "G", "length must equal the length of L");
  }
  if (doc.contains("G_rule")) {
    if (!doc["G_rule"].is_string()) fail(root / "G_rule", "expected a string");
    try {
      rule = parse_grid_rule(doc["G_rule"].get<std::string>());
    } catch (const ValidationError& e) {
      fail(root / "G_rule", e.what());
    }
  }

  SupSamplingPolicy sup;
  if (doc.contains("sup_sampling")) {
    const json& js = doc["sup_sampling"];
    const Ptr at = root / "sup_sampling";
    if (!js.is_object()) fail(at, "expected an object");
    if (js.contains("domain")) {
      if (!js["domain"].is_string()) fail(at / "domain", "expected a string");
      try {
        sup.domain = parse_sup_domain(js["domain"].get<std::string>());
      } catch (const ValidationError& e) {
        fail(at / "domain", e.what());
      }
    }
    if (js.contains("n_per_dim")) sup.n_per_dim = as_int(js["n_per_dim"], at / "n_per_dim");
    if (js.contains("max_points")) sup.max_points = as_int(js["max_points"], at / "max_points");
    if (js.contains("refine_top")) sup.refine_top = static_cast<int>(as_int(js["refine_top"], at / "refine_top"));
    if (sup.n_per_dim < 0 || sup.max_points < 1) fail(at, "sampling density must be positive");
  }

  return ProblemFile{std::move(*spec), std::move(L), std::move(G), rule, static_cast<int>(eta), sup};
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open problem file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

PeriodGrid make_grid(const std::vector<long long>& L, const std::optional<std::vector<long long>>& G,
                     const std::optional<GridRule>& rule, int eta) {
  if (G) return PeriodGrid::create(L, *G, eta);
  return PeriodGrid::create(L, grid_from_rule(rule.value_or(GridRule::TenL), L), eta);
}

}  // namespace qpa
