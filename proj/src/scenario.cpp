#include "ci0/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace ci0 {

namespace fs = std::filesystem;

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string need_string(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_string()) throw InputError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw InputError(std::string(what) + " must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Json matrix_json(const AlgMatrix& m) { return Json(m.to_strings()); }

Value element_list(const Row& r) {
  std::vector<Value> items(r.begin(), r.end());
  return Value::list(std::move(items));
}

Value ideal_list(const std::vector<IdealSubspace>& v) {
  std::vector<Value> items(v.begin(), v.end());
  return Value::list(std::move(items));
}

Value chain_value(const ChainReport& c) {
  Value out = Value::object();
  out.set("length", Json(c.length()));
  out.set("ideals", ideal_list(c.ideals));
  Json strict = Json::array(), ci0 = Json::array(), gor = Json::array();
  for (const auto& l : c.links) {
    strict.push_back(l.strict);
    ci0.push_back(l.ci0);
    gor.push_back(l.gorenstein);
  }
  out.set("strict", strict);
  out.set("ci0", ci0);
  out.set("gorenstein", gor);
  return out;
}

Value verdict_value(const Ci0Verdict& v) {
  Value out = Value::object();
  out.set("verdict", v.is_ci0);
  if (v.certificate) out.set("certificate", matrix_json(*v.certificate));
  if (!v.refutation.empty()) out.set("refutation", Json(v.refutation));
  return out;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
  if (dynamic_cast<const Inconclusive*>(&e)) return "inconclusive";
  if (dynamic_cast<const NotApplicable*>(&e)) return "not_applicable";
  if (dynamic_cast<const InvariantViolation*>(&e)) return "invariant";
  if (dynamic_cast<const NotZeroDimensional*>(&e)) return "not_zero_dimensional";
  if (dynamic_cast<const NotLocal*>(&e)) return "not_local";
  return "error";
}

bool is_input_error(const std::exception& e) {
  return dynamic_cast<const InputError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
         dynamic_cast<const ContextMismatch*>(&e) || dynamic_cast<const Json::exception*>(&e);
}

}  // namespace

RingSpec ring_spec_from_json(const Json& j) {
  RingSpec r;
  if (!j.is_object()) throw InputError("ring must be an object");
  r.name = j.value("name", "");
  r.field = j.value("field", "Q");
  r.vars = string_list(need(j, "vars"), "vars");
  r.relations = string_list(need(j, "relations"), "relations");
  r.order = j.value("order", "degrevlex");
  r.tag = j.value("tag", "");
  return r;
}

Json to_json(const RingSpec& r) {
  Json j;
  j["name"] = r.name;
  j["field"] = r.field;
  j["vars"] = r.vars;
  j["relations"] = r.relations;
  j["order"] = r.order;
  if (!r.tag.empty()) j["tag"] = r.tag;
  return j;
}

AlgebraPtr build_algebra(const RingSpec& r, const std::optional<std::string>& field_override) {
  Field f = Field::parse(field_override.value_or(r.field));
  return ArtinAlgebra::build(f, r.vars, r.relations, MonomialOrder::parse(r.order));
}

Json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    std::string text = buf.str();
    std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    throw InputError(path.string() + ":" + std::to_string(line) + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Value

Value& Value::set(const std::string& key, Value v) {
  for (auto& f : fields_)
    if (f.first == key) {
      f.second = std::move(v);
      return *this;
    }
  fields_.emplace_back(key, std::move(v));
  return *this;
}

const Value* Value::find(const std::string& key) const {
  for (const auto& f : fields_)
    if (f.first == key) return &f.second;
  return nullptr;
}

Json Value::to_json() const {
  switch (kind_) {
    case Kind::Plain:
      return plain_;
    case Kind::Ideal: {
      Json gens = Json::array();
      for (const auto& g : minimal_generators(*ideal_)) gens.push_back(g.to_string());
      return Json{{"gens", gens}};
    }
    case Kind::Element:
      return elem_->to_string();
    case Kind::Object: {
      Json o = Json::object();
      for (const auto& [k, v] : fields_) o[k] = v.to_json();
      return o;
    }
    case Kind::List: {
      Json a = Json::array();
      for (const auto& v : items_) a.push_back(v.to_json());
      return a;
    }
  }
  return nullptr;
}

std::optional<bool> Value::verdict() const {
  if (kind_ == Kind::Plain && plain_.is_boolean()) return plain_.get<bool>();
  if (kind_ == Kind::Object)
    if (const Value* v = find("verdict")) return v->verdict();
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Evaluator

Evaluator::Evaluator(AlgebraPtr alg, fs::path base, std::uint64_t seed)
    : alg_(std::move(alg)), base_(std::move(base)), seed_(seed) {}

AlgElement Evaluator::element(const Json& j) const {
  if (j.is_string()) return alg_->parse(j.get<std::string>());
  if (j.is_number_integer()) return alg_->scalar(Scalar::from_int(alg_->field(), j.get<long>()));
  throw InputError("element must be a polynomial string, got " + j.dump());
}

Row Evaluator::row(const Json& j) const {
  if (j.is_string() && j.get<std::string>() == "vars") return alg_->variables();
  if (!j.is_array()) throw InputError("row must be an array of elements or \"vars\"");
  Row r;
  for (const auto& e : j) r.push_back(element(e));
  return r;
}

AlgMatrix Evaluator::matrix(const Json& j) const {
  if (j.is_string()) {
    fs::path p = base_ / j.get<std::string>();
    return matrix(read_json_file(p));
  }
  if (j.is_array()) {
    std::vector<std::vector<std::string>> entries;
    for (const auto& r : j) entries.push_back(string_list(r, "matrix row"));
    if (entries.empty()) throw InputError("matrix has no rows");
    for (const auto& r : entries)
      if (r.size() != entries[0].size()) throw InputError("ragged matrix rows");
    return AlgMatrix::parse(alg_, entries);
  }
  if (j.is_object()) {
    if (j.contains("entries")) return matrix(j.at("entries"));
    if (j.contains("diag")) return AlgMatrix::diagonal(row(j.at("diag")));
    if (j.contains("identity")) return AlgMatrix::identity(alg_, j.at("identity").get<std::size_t>());
    if (j.contains("product")) {
      const Json& fs = j.at("product");
      if (!fs.is_array() || fs.empty()) throw InputError("product needs a nonempty list of matrices");
      AlgMatrix m = matrix(fs[0]);
      for (std::size_t i = 1; i < fs.size(); ++i) m = m * matrix(fs[i]);
      return m;
    }
  }
  throw InputError("unrecognized matrix form " + j.dump());
}

IdealSubspace Evaluator::ideal(const Json& j) const {
  if (j.is_array()) return ideal_span(alg_, row(j));
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "M") return maximal_ideal(alg_);
    if (s == "0") return zero_ideal(alg_);
    return principal_ideal(element(j));
  }
  if (!j.is_object() || j.size() != 1) throw InputError("ideal expression must be an object with one key: " + j.dump());
  const std::string key = j.begin().key();
  const Json& v = j.begin().value();
  if (key == "gens") return ideal_span(alg_, row(v));
  if (key == "principal") return principal_ideal(element(v));
  if (key == "ann") {
    if (v.is_string()) return annihilator(element(v));
    return colon(zero_ideal(alg_), ideal(v));
  }
  if (key == "colon") return colon(ideal(need(v, "of")), ideal(need(v, "by")));
  if (key == "socle") return socle(alg_);
  if (key == "power") return maximal_ideal_power(alg_, v.get<unsigned>());
  if (key == "maximal") return maximal_ideal(alg_);
  if (key == "zero") return zero_ideal(alg_);
  if (key == "unit") return unit_ideal(alg_);
  if (key == "J") {
    Row x = alg_->variables();
    AlgMatrix m = matrix(v);
    return ideal_span(alg_, row_times(x, m));
  }
  if (key == "sum" || key == "product" || key == "intersection") {
    if (!v.is_array() || v.empty()) throw InputError(key + " needs a nonempty list");
    IdealSubspace acc = ideal(v[0]);
    for (std::size_t i = 1; i < v.size(); ++i) {
      IdealSubspace b = ideal(v[i]);
      acc = key == "sum" ? ideal_sum(acc, b) : key == "product" ? ideal_product(acc, b) : ideal_intersection(acc, b);
    }
    return acc;
  }
  throw InputError("unknown ideal expression '" + key + "'");
}

const std::vector<std::string>& Evaluator::operations() {
  static const std::vector<std::string> ops = {
      "dim",          "exponent",       "embedding_dim",  "hilbert",          "graded_symmetry",
      "socle",        "ideal",          "ideal_equal",    "ideal_dim",        "mingens",
      "principal",    "member",         "subset",         "gorenstein_quotient", "ci0",
      "ci0_ann",      "quotient",       "nice",           "wiebe",            "det",          "matrix_equal",
      "right_factor", "equivalent",     "translate",      "koszul_member",    "fitting",
      "syzygies",     "chain_factors",  "chain_socle",    "chain_triangular", "triangular_converse",
      "refine",       "profile",        "zero_divisor_pair", "normalize",     "diagonalize",
      "decompose",    "maxchain",       "realize",        "min_exponent"};
  return ops;
}

Value Evaluator::run(const std::string& op, const Json& a) const {
  auto opt_ideal = [&]() -> std::optional<IdealSubspace> {
    if (a.is_object() && a.contains("ideal")) return ideal(a.at("ideal"));
    return std::nullopt;
  };
  auto target = [&]() -> AlgebraPtr {
    if (auto I = opt_ideal()) return Quotient(*I).target();
    return alg_;
  };
  auto x_row = [&]() -> Row { return a.is_object() && a.contains("row") ? row(a.at("row")) : alg_->variables(); };

  if (op == "dim") return Value(Json(target()->dim()));
  if (op == "exponent") {
    if (auto I = opt_ideal()) return Value(Json(quotient_exponent(*I)));
    return Value(Json(alg_->exponent()));
  }
  if (op == "embedding_dim") return Value(Json(target()->embedding_dimension()));
  if (op == "hilbert") return Value(Json(hilbert_data(target())));
  if (op == "graded_symmetry") return Value(graded_symmetry_check(target()));
  if (op == "socle") return Value(socle(alg_));
  if (op == "ideal") return Value(ideal(need(a, "of")));
  if (op == "ideal_equal") return Value(ideal(need(a, "a")) == ideal(need(a, "b")));
  if (op == "ideal_dim") return Value(Json(ideal(need(a, "ideal")).dim()));
  if (op == "mingens") {
    IdealSubspace I = ideal(need(a, "ideal"));
    Value out = Value::object();
    out.set("count", Json(minimal_generator_count(I)));
    out.set("ideal", I);
    return out;
  }
  if (op == "principal") return Value(is_principal(ideal(need(a, "ideal"))));
  if (op == "member") return Value(ideal(need(a, "ideal")).contains(element(need(a, "elem"))));
  if (op == "subset") return Value(ideal(need(a, "b")).contains(ideal(need(a, "a"))));
  if (op == "gorenstein_quotient") {
    if (auto I = opt_ideal()) return Value(is_gorenstein_quotient(*I));
    return Value(is_gorenstein(alg_));
  }
  if (op == "ci0") return verdict_value(ci0_test(ideal(need(a, "ideal")), seed_));
  if (op == "ci0_ann") return verdict_value(ann_ci0_test(element(need(a, "elem")), seed_));
  if (op == "quotient") {
    Quotient q(ideal(need(a, "ideal")));
    const Json& inner = need(a, "assert");
    Evaluator sub(q.target(), base_, seed_);
    return sub.run(need_string(inner, "op"), inner.value("args", Json::object()));
  }
  if (op == "nice") {
    Row x = x_row();
    NiceCheck c = is_x_nice(matrix(need(a, "matrix")), &x);
    Value out = Value::object();
    out.set("verdict", c.nice);
    out.set("ideal", c.ideal);
    out.set("det", c.det);
    return out;
  }
  if (op == "wiebe") {
    Row x = x_row();
    return Value(is_wiebe(matrix(need(a, "matrix")), &x));
  }
  if (op == "det") return Value(det(matrix(need(a, "matrix"))));
  if (op == "matrix_equal") return Value(matrix(need(a, "a")) == matrix(need(a, "b")));
  if (op == "right_factor") {
    auto g = right_factor(matrix(need(a, "phi")), matrix(need(a, "psi")));
    Value out = Value::object();
    out.set("verdict", g.has_value());
    if (g) out.set("gamma", matrix_json(*g));
    return out;
  }
  if (op == "equivalent") return Value(nice_equivalent(matrix(need(a, "phi1")), matrix(need(a, "phi2"))));
  if (op == "translate") {
    auto t = membership_in_translate(matrix(need(a, "phi1")), matrix(need(a, "phi2")), seed_);
    Value out = Value::object();
    out.set("verdict", t.solvable && t.theta.has_value());
    if (t.theta) out.set("theta", matrix_json(*t.theta));
    if (t.alpha) out.set("alpha_in_koszul", in_koszul_ideal(*t.alpha));
    return out;
  }
  if (op == "koszul_member") {
    if (a.contains("column")) return Value(in_koszul_image(row(a.at("column"))));
    AlgMatrix m = matrix(need(a, "matrix"));
    Json cols = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(in_koszul_image(m.column(j)));
    Value out = Value::object();
    out.set("verdict", in_koszul_ideal(m));
    out.set("columns", cols);
    return out;
  }
  if (op == "fitting") {
    Row x = x_row();
    if (a.value("compare_raw", false)) return Value(fitting_delta0(x, false) == fitting_delta0(x, true));
    return Value(fitting_delta0(x, a.value("minimized", true)));
  }
  if (op == "syzygies") {
    Row x = x_row();
    SyzygySet raw = syzygies(x, false), mini = syzygies(x, true);
    Value out = Value::object();
    out.set("kernel_dim", Json(raw.kernel_dim));
    out.set("minimal", Json(mini.columns.size()));
    return out;
  }
  if (op == "chain_factors") {
    std::vector<AlgMatrix> fs;
    for (const auto& f : need(a, "factors")) fs.push_back(matrix(f));
    return chain_value(chain_from_matrix_factorization(fs));
  }
  if (op == "chain_socle") {
    return chain_value(gorenstein_chain_from_socle_factorization(row(need(a, "factors"))));
  }
  if (op == "chain_triangular") {
    return chain_value(triangular_chain(row(need(a, "z")), matrix(need(a, "matrix"))));
  }
  if (op == "triangular_converse") {
    Row z = row(need(a, "z"));
    auto m = triangular_from_chain(z);
    Value out = Value::object();
    out.set("verdict", m.has_value());
    if (m) {
      out.set("matrix", matrix_json(*m));
      out.set("wiebe", is_wiebe(*m, &z));
    }
    return out;
  }
  if (op == "refine") {
    AlgMatrix phi1 = matrix(need(a, "phi1"));
    AlgMatrix g = refine_pair(ideal(need(a, "I0")), ideal(need(a, "I1")), phi1, seed_);
    NiceCheck c = is_x_nice(phi1 * g);
    Value out = Value::object();
    out.set("verdict", c.nice);
    out.set("ideal", c.ideal);
    out.set("det_ideal", principal_ideal(det(g)));
    out.set("gamma", matrix_json(g));
    return out;
  }
  if (op == "profile") {
    MinGenProfile p = min_generator_profile(element(need(a, "elem")));
    Value out = Value::object();
    out.set("verdict", p.all_true());
    out.set("ann_is_ci0", p.ann_is_ci0);
    out.set("ann_is_principal", p.ann_is_principal);
    out.set("yA_is_ci0", p.yA_is_ci0);
    out.set("block_wiebe_found", p.block_wiebe_found);
    if (p.z) out.set("ann", principal_ideal(*p.z));
    if (p.psi) out.set("psi", matrix_json(*p.psi));
    return out;
  }
  if (op == "zero_divisor_pair") {
    auto r = zero_divisor_pair_check(element(need(a, "y")), element(need(a, "z")));
    Value out = Value::object();
    out.set("verdict", r.holds());
    out.set("ann_y_is_zA", r.ann_y_is_zA);
    out.set("ann_z_is_yA", r.ann_z_is_yA);
    out.set("yA_ci0", r.yA_ci0);
    out.set("zA_ci0", r.zA_ci0);
    if (r.exponent_drop) out.set("exponent_drop", *r.exponent_drop);
    return out;
  }
  if (op == "normalize") {
    auto n = normalize_first_row(matrix(need(a, "matrix")));
    Row first;
    for (std::size_t j = 0; j < n.phi1.cols(); ++j) first.push_back(n.phi1(0, j));
    Value out = Value::object();
    out.set("verdict", n.r1 == n.r1_formula);
    out.set("r1", Json(n.r1));
    out.set("r1_formula", Json(n.r1_formula));
    out.set("first_row", element_list(first));
    out.set("matrix", matrix_json(n.phi1));
    return out;
  }
  if (op == "diagonalize") {
    AlgMatrix g = matrix(need(a, "matrix"));
    auto d = diagonalize_unit_pivot(g);
    Row diag(g.rows(), alg_->one());
    diag[0] = d.d;
    Value out = Value::object();
    out.set("verdict", d.theta1 * g * d.theta2 == AlgMatrix::diagonal(diag));
    out.set("d", d.d);
    return out;
  }
  if (op == "decompose") {
    SearchMode mode = a.value("mode", "exhaustive") == "bounded" ? SearchMode::Bounded : SearchMode::Exhaustive;
    std::size_t budget = a.value("budget", std::size_t{20000});
    DecompositionResult r = a.contains("matrix") ? decompose_search(matrix(a.at("matrix")), mode, seed_, budget)
                                                 : decompose_search(element(need(a, "elem")), mode, seed_, budget);
    Value out = Value::object();
    out.set("status", Json(to_string(r.status)));
    out.set("search_space", Json(r.search_space));
    if (r.element_witness)
      out.set("witness", element_list({r.element_witness->first, r.element_witness->second}));
    if (r.matrix_witness)
      out.set("witness", Json::array({matrix_json(r.matrix_witness->first), matrix_json(r.matrix_witness->second)}));
    out.set("constraints", Json(r.constraints));
    std::vector<Value> uni;
    for (const auto& u : r.univariate) {
      Value v = Value::object();
      v.set("pattern", Json(u.pattern));
      v.set("variable", Json(u.variable));
      v.set("polynomial", Json(u.polynomial));
      Json roots = Json::array();
      for (const auto& s : u.roots) roots.push_back(s.to_string());
      v.set("roots", roots);
      uni.push_back(std::move(v));
    }
    out.set("univariate", Value::list(std::move(uni)));
    return out;
  }
  if (op == "maxchain") {
    std::optional<IdealSubspace> start;
    if (a.contains("start")) start = ideal(a.at("start"));
    auto r = max_length_chain_probe(alg_, seed_, a.value("budget", std::size_t{400}), start);
    Value out = Value::object();
    out.set("best_length", Json(r.best_length));
    out.set("upper_bound", Json(r.upper_bound));
    out.set("bequi", r.bequi_witness);
    out.set("budget_exhausted", r.budget_exhausted);
    out.set("chain", ideal_list(r.best_chain));
    return out;
  }
  if (op == "realize") {
    auto s = realize_split_generators(element(need(a, "elem")));
    Json gens = Json::array();
    for (const auto& g : s.generators) gens.push_back(g.to_string());
    Value out = Value::object();
    out.set("verdict", s.regenerates);
    out.set("global", s.global);
    out.set("generators", gens);
    out.set("y", Json(s.y_lift.to_string()));
    out.set("z", Json(s.z_lift.to_string()));
    return out;
  }
  if (op == "min_exponent") {
    Row extra;
    if (a.contains("extra")) extra = row(a.at("extra"));
    auto r = minimal_exponent_checks(alg_, extra);
    Value out = Value::object();
    out.set("minimal_exponent", r.minimal_exponent);
    out.set("exponent", Json(r.exponent));
    out.set("embedding_dimension", Json(r.embedding_dimension));
    std::vector<Value> checks;
    for (const auto& c : r.checks) {
      Value v = Value::object();
      v.set("y", c.y);
      v.set("sequence", element_list(c.sequence));
      v.set("c5t", c.c5t);
      v.set("pimi", c.pimi);
      if (c.z) v.set("z", *c.z);
      v.set("square_in_rest", c.square_in_rest);
      v.set("bof", c.bof);
      v.set("yA_ci0", c.yA_ci0);
      checks.push_back(std::move(v));
    }
    out.set("checks", Value::list(std::move(checks)));
    return out;
  }
  throw InputError("unknown operation '" + op + "'");
}

bool Evaluator::matches(const Value& c, const Json& e) const {
  switch (c.kind_) {
    case Value::Kind::Plain:
      return c.plain_ == e;
    case Value::Kind::Ideal:
      if (c.ideal_->algebra() != alg_) return Evaluator(c.ideal_->algebra(), base_, seed_).matches(c, e);
      return ideal(e) == *c.ideal_;
    case Value::Kind::Element:
      if (c.elem_->algebra() != alg_) return Evaluator(c.elem_->algebra(), base_, seed_).matches(c, e);
      return element(e) == *c.elem_;
    case Value::Kind::Object:
      if (!e.is_object()) {
        auto v = c.verdict();
        return v && e.is_boolean() && *v == e.get<bool>();
      }
      for (const auto& [k, v] : e.items()) {
        const Value* f = c.find(k);
        if (!f || !matches(*f, v)) return false;
      }
      return true;
    case Value::Kind::List:
      if (!e.is_array() || e.size() != c.items_.size()) return false;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (!matches(c.items_[i], e[i])) return false;
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Reports

std::size_t ScenarioResult::passed() const {
  return std::count_if(assertions.begin(), assertions.end(), [](const auto& a) { return a.pass; });
}
std::size_t ScenarioResult::failed() const { return assertions.size() - passed(); }

std::size_t Report::passed() const {
  std::size_t n = 0;
  for (const auto& s : scenarios) n += s.passed();
  return n;
}
std::size_t Report::failed() const {
  std::size_t n = 0;
  for (const auto& s : scenarios) n += s.failed();
  return n;
}

Json to_json(const Report& r) {
  Json out;
  out["passed"] = r.passed();
  out["failed"] = r.failed();
  out["warnings"] = r.warnings;
  Json scs = Json::array();
  for (const auto& s : r.scenarios) {
    Json js;
    js["file"] = s.file;
    js["tag"] = s.tag;
    js["ring"] = s.ring;
    js["seed"] = s.seed;
    js["passed"] = s.passed();
    js["failed"] = s.failed();
    Json as = Json::array();
    for (const auto& a : s.assertions) {
      Json ja;
      ja["index"] = a.index;
      ja["op"] = a.op;
      ja["note"] = a.note;
      ja["pass"] = a.pass;
      ja["computed"] = a.computed;
      ja["expect"] = a.expect;
      if (!a.error.empty()) ja["error"] = a.error;
      as.push_back(std::move(ja));
    }
    js["assertions"] = std::move(as);
    scs.push_back(std::move(js));
  }
  out["scenarios"] = std::move(scs);
  return out;
}

Report report_from_json(const Json& j) {
  Report r;
  r.warnings = j.value("warnings", std::vector<std::string>{});
  for (const auto& js : need(j, "scenarios")) {
    ScenarioResult s;
    s.file = need_string(js, "file");
    s.tag = js.value("tag", "");
    s.ring = js.value("ring", "");
    s.seed = js.value("seed", std::uint64_t{0});
    for (const auto& ja : need(js, "assertions")) {
      AssertionResult a;
      a.index = ja.value("index", std::size_t{0});
      a.op = need_string(ja, "op");
      a.note = ja.value("note", "");
      a.pass = ja.value("pass", false);
      a.computed = ja.value("computed", Json());
      a.expect = ja.value("expect", Json());
      a.error = ja.value("error", "");
      s.assertions.push_back(std::move(a));
    }
    r.scenarios.push_back(std::move(s));
  }
  return r;
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  for (const auto& s : r.scenarios) {
    os << (s.failed() == 0 ? "PASS " : "FAIL ") << s.file;
    if (!s.tag.empty()) os << " [" << s.tag << "]";
    os << " " << s.passed() << "/" << s.assertions.size() << "\n";
    for (const auto& a : s.assertions) {
      if (a.pass) continue;
      os << "  #" << a.index << " " << a.op;
      if (!a.note.empty()) os << " (" << a.note << ")";
      os << ": expected " << a.expect.dump() << ", got " << a.computed.dump();
      if (!a.error.empty()) os << " [" << a.error << "]";
      os << "\n";
    }
  }
  os << r.passed() << " passed, " << r.failed() << " failed\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Scenario runner

ScenarioResult run_scenario_file(const fs::path& path) {
  Json sc = read_json_file(path);
  fs::path base = path.parent_path();
  ScenarioResult res;
  res.file = path.generic_string();
  try {
    res.tag = sc.value("tag", "");
    res.seed = sc.value("seed", std::uint64_t{0});
    const Json& ring = need(sc, "ring");
    RingSpec spec = ring.is_string() ? ring_spec_from_json(read_json_file(base / ring.get<std::string>()))
                                     : ring_spec_from_json(ring);
    std::optional<std::string> field;
    if (sc.contains("field")) field = sc.at("field").get<std::string>();
    AlgebraPtr alg = build_algebra(spec, field);
    res.ring = spec.name + " over " + alg->field().name();
    Evaluator ev(alg, base, res.seed);

    const Json& list = need(sc, "assertions");
    if (!list.is_array()) throw InputError("assertions must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Json& as = list[i];
      AssertionResult ar;
      ar.index = i;
      ar.op = need_string(as, "op");
      ar.note = as.value("note", "");
      ar.expect = need(as, "expect");
      if (std::find(Evaluator::operations().begin(), Evaluator::operations().end(), ar.op) ==
          Evaluator::operations().end())
        throw InputError("assertion #" + std::to_string(i) + ": unknown operation '" + ar.op + "'");
      bool expects_error = ar.expect.is_object() && ar.expect.size() == 1 && ar.expect.contains("error");
      try {
        Value v = ev.run(ar.op, as.value("args", Json::object()));
        ar.computed = v.to_json();
        ar.pass = !expects_error && ev.matches(v, ar.expect);
      } catch (const std::exception& e) {
        if (is_input_error(e))
          throw InputError("assertion #" + std::to_string(i) + " (" + ar.op + "): " + e.what());
        ar.error = error_kind(e) + ": " + e.what();
        ar.computed = Json{{"error", error_kind(e)}};
        ar.pass = expects_error && ar.expect.at("error") == error_kind(e);
      }
      res.assertions.push_back(std::move(ar));
    }
  } catch (const InputError& e) {
    std::string msg = e.what();
    if (msg.rfind(path.string(), 0) == 0) throw;
    throw InputError(path.string() + ": " + msg);
  } catch (const std::exception& e) {
    if (!is_input_error(e)) throw;
    throw InputError(path.string() + ": " + e.what());
  }
  return res;
}

Report run_suite(const fs::path& dir, unsigned threads) {
  if (!fs::is_directory(dir)) throw InputError(dir.string() + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  Report rep;
  if (files.empty()) {
    rep.warnings.push_back("no scenarios found in " + dir.generic_string());
    return rep;
  }
  if (threads == 0) {
    threads = 1;
    if (const char* env = std::getenv("CI0_THREADS")) {
      long v = std::strtol(env, nullptr, 10);
      if (v > 0) threads = static_cast<unsigned>(v);
    }
  }
  threads = std::min<unsigned>(threads, files.size());

  std::vector<std::optional<ScenarioResult>> results(files.size());
  std::vector<std::string> errors(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i; (i = next++) < files.size();) {
      try {
        results[i] = run_scenario_file(files[i]);
        results[i]->file = files[i].lexically_relative(dir).generic_string();
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!errors[i].empty()) throw InputError(errors[i]);
    rep.scenarios.push_back(std::move(*results[i]));
  }
  return rep;
}

}  // namespace ci0
