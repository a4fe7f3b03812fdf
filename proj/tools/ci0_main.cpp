#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ci0/scenario.hpp"

using namespace ci0;
namespace fs = std::filesystem;

namespace {

struct Common {
  std::string ring;
  std::string field;
  bool json = false;
  bool assert_verdict = false;
  std::uint64_t seed = 0;
};

struct Inputs {
  std::string ideal, by, elem, elem2, matrix, matrix2, row, start, mode = "exhaustive";
  std::vector<std::string> factors, extra;
  unsigned power = 1;
  std::size_t budget = 0;
  bool raw = false;
};

Json maybe_inline(const std::string& s) {
  if (!s.empty() && (s.front() == '[' || s.front() == '{')) {
    try {
      return Json::parse(s);
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("inline JSON: ") + e.what());
    }
  }
  return s;
}

Json ideal_arg(const std::string& s) {
  Json j = maybe_inline(s);
  if (!j.is_string()) return j;
  if (s == "M" || s == "0") return s;
  Json gens = Json::array();
  std::stringstream ss(s);
  for (std::string g; std::getline(ss, g, ',');) gens.push_back(g);
  return gens;
}

Json row_arg(const std::string& s) {
  if (s.empty() || s == "vars") return "vars";
  Json j = maybe_inline(s);
  if (!j.is_string()) return j;
  return ideal_arg(s);
}

std::string render_plain(const Json& j) {
  if (j.is_object() && j.size() == 1 && j.contains("gens")) {
    std::string out = "(";
    for (std::size_t i = 0; i < j["gens"].size(); ++i) out += (i ? ", " : "") + j["gens"][i].get<std::string>();
    return out + ")";
  }
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

std::string render_value(const Json& j) {
  if (!j.is_object() || (j.size() == 1 && j.contains("gens"))) return render_plain(j) + "\n";
  std::string out;
  for (const auto& [k, v] : j.items()) out += k + ": " + render_plain(v) + "\n";
  return out;
}

int run_op(const std::string& command, const Common& c, const std::string& op, const Json& args) {
  Json rj = maybe_inline(c.ring);
  RingSpec spec = rj.is_string() ? ring_spec_from_json(read_json_file(rj.get<std::string>())) : ring_spec_from_json(rj);
  std::optional<std::string> field;
  if (!c.field.empty()) field = c.field;
  AlgebraPtr alg = build_algebra(spec, field);
  Evaluator ev(alg, fs::path("."), c.seed);
  Value v = ev.run(op, args);
  Json result = v.to_json();
  std::optional<bool> verdict = v.verdict();
  if (c.json) {
    Json out;
    out["command"] = command;
    out["ring"] = spec.name;
    out["field"] = alg->field().name();
    out["seed"] = c.seed;
    out["result"] = result;
    if (verdict) out["verdict"] = *verdict;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << render_value(result);
  }
  return c.assert_verdict && verdict && !*verdict ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complete-intersection ideals of Artinian local algebras"};
  app.require_subcommand(1);
  Common c;
  Inputs in;
  std::function<int()> action;

  auto common = [&](CLI::App* s, bool ring = true) {
    if (ring) s->add_option("--ring", c.ring, "ring JSON file or inline JSON")->required();
    s->add_option("--field", c.field, "field override, e.g. Q or GF(5)");
    s->add_flag("--json", c.json, "machine-readable output");
    s->add_flag("--assert", c.assert_verdict, "exit 1 when the verdict is false");
    s->add_option("--seed", c.seed, "random seed")->default_val(0);
  };
  auto bind = [&](CLI::App* s, std::string command, std::function<std::pair<std::string, Json>()> make) {
    common(s);
    s->callback([&, s, command, make]() {
      (void)s;
      action = [&, command, make]() {
        auto [op, args] = make();
        return run_op(command, c, op, args);
      };
    });
  };
  auto group = [&](const std::string& name, const std::string& help) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };

  auto* check = group("check", "matrix criteria");
  {
    auto* s = check->add_subcommand("nice", "is the matrix x-nice");
    s->add_option("--matrix", in.matrix)->required();
    s->add_option("--row", in.row, "generating row, default the variables");
    bind(s, "check nice", [&] { return std::pair{std::string("nice"), Json{{"matrix", maybe_inline(in.matrix)}, {"row", row_arg(in.row)}}}; });
    auto* w = check->add_subcommand("wiebe", "is the matrix x-Wiebe");
    w->add_option("--matrix", in.matrix)->required();
    w->add_option("--row", in.row);
    bind(w, "check wiebe", [&] { return std::pair{std::string("wiebe"), Json{{"matrix", maybe_inline(in.matrix)}, {"row", row_arg(in.row)}}}; });
  }

  auto* ci = group("ci0", "C.I.0 decisions");
  {
    auto* s = ci->add_subcommand("ideal", "decide whether an ideal is C.I.0");
    s->add_option("--ideal", in.ideal)->required();
    bind(s, "ci0 ideal", [&] { return std::pair{std::string("ci0"), Json{{"ideal", ideal_arg(in.ideal)}}}; });
    auto* a = ci->add_subcommand("ann", "decide whether 0 : bA is C.I.0");
    a->add_option("--elem", in.elem)->required();
    bind(a, "ci0 ann", [&] { return std::pair{std::string("ci0_ann"), Json{{"elem", in.elem}}}; });
  }

  auto* id = group("ideal", "ideal computations");
  {
    auto* s = id->add_subcommand("socle", "socle 0 : M");
    bind(s, "ideal socle", [&] { return std::pair{std::string("socle"), Json::object()}; });
    auto* col = id->add_subcommand("colon", "I : J");
    col->add_option("--ideal", in.ideal)->required();
    col->add_option("--by", in.by)->required();
    bind(col, "ideal colon", [&] {
      return std::pair{std::string("ideal"), Json{{"of", {{"colon", {{"of", ideal_arg(in.ideal)}, {"by", ideal_arg(in.by)}}}}}}};
    });
    auto* ann = id->add_subcommand("ann", "annihilator of an element or ideal");
    ann->add_option("--elem", in.elem);
    ann->add_option("--ideal", in.ideal);
    bind(ann, "ideal ann", [&] {
      if (in.elem.empty() == in.ideal.empty()) throw InputError("give exactly one of --elem, --ideal");
      Json of = in.elem.empty() ? Json{{"ann", ideal_arg(in.ideal)}} : Json{{"ann", in.elem}};
      return std::pair{std::string("ideal"), Json{{"of", of}}};
    });
    auto* pw = id->add_subcommand("power", "M^k");
    pw->add_option("--k", in.power)->required();
    bind(pw, "ideal power", [&] { return std::pair{std::string("ideal"), Json{{"of", {{"power", in.power}}}}}; });
    auto* mg = id->add_subcommand("mingens", "minimal generators");
    mg->add_option("--ideal", in.ideal)->required();
    bind(mg, "ideal mingens", [&] { return std::pair{std::string("mingens"), Json{{"ideal", ideal_arg(in.ideal)}}}; });
    auto* ex = id->add_subcommand("exponent", "exponent of A or A/I");
    ex->add_option("--ideal", in.ideal);
    bind(ex, "ideal exponent", [&] {
      Json args = Json::object();
      if (!in.ideal.empty()) args["ideal"] = ideal_arg(in.ideal);
      return std::pair{std::string("exponent"), args};
    });
  }

  auto* ch = group("chain", "chains of C.I.0 and Gorenstein ideals");
  {
    auto* s = ch->add_subcommand("from-factors", "chain from a matrix factorization eta_t ... eta_1");
    s->add_option("--factor", in.factors, "matrix file or inline JSON, outermost first")->required();
    bind(s, "chain from-factors", [&] {
      Json fs = Json::array();
      for (const auto& f : in.factors) fs.push_back(maybe_inline(f));
      return std::pair{std::string("chain_factors"), Json{{"factors", fs}}};
    });
    auto* g = ch->add_subcommand("from-socle", "chain from a socle factorization a_r ... a_1");
    g->add_option("--factor", in.factors, "element, outermost first")->required();
    bind(g, "chain from-socle", [&] { return std::pair{std::string("chain_socle"), Json{{"factors", in.factors}}}; });
    auto* t = ch->add_subcommand("triangular", "chain from an upper triangular Wiebe matrix");
    t->add_option("--z", in.row, "generating sequence")->required();
    t->add_option("--matrix", in.matrix)->required();
    bind(t, "chain triangular", [&] {
      return std::pair{std::string("chain_triangular"), Json{{"z", row_arg(in.row)}, {"matrix", maybe_inline(in.matrix)}}};
    });
  }

  auto* mg = group("mingen", "minimal generators of M");
  {
    auto* s = mg->add_subcommand("profile", "the four equivalent conditions for y");
    s->add_option("--elem", in.elem)->required();
    bind(s, "mingen profile", [&] { return std::pair{std::string("profile"), Json{{"elem", in.elem}}}; });
  }

  auto* nm = group("normalize", "normal forms");
  {
    auto* s = nm->add_subcommand("l52", "first-row normal form of a nice matrix");
    s->add_option("--matrix", in.matrix)->required();
    bind(s, "normalize l52", [&] { return std::pair{std::string("normalize"), Json{{"matrix", maybe_inline(in.matrix)}}}; });
  }

  auto* pv = group("pivot", "unit-pivot reduction");
  {
    auto* s = pv->add_subcommand("diag", "diagonalize a matrix with det in M \\ M^2");
    s->add_option("--matrix", in.matrix)->required();
    bind(s, "pivot diag", [&] { return std::pair{std::string("diagonalize"), Json{{"matrix", maybe_inline(in.matrix)}}}; });
  }

  auto* kz = group("koszul", "Koszul complex");
  {
    auto* s = kz->add_subcommand("member", "membership in the image of the second boundary map");
    s->add_option("--column", in.row, "column of elements");
    s->add_option("--matrix", in.matrix, "test every column and the matrix");
    bind(s, "koszul member", [&] {
      if (in.row.empty() == in.matrix.empty()) throw InputError("give exactly one of --column, --matrix");
      if (!in.row.empty()) return std::pair{std::string("koszul_member"), Json{{"column", row_arg(in.row)}}};
      return std::pair{std::string("koszul_member"), Json{{"matrix", maybe_inline(in.matrix)}}};
    });
  }

  {
    auto* s = app.add_subcommand("decompose", "search for a non-trivial factorization");
    s->add_option("--elem", in.elem);
    s->add_option("--matrix", in.matrix);
    s->add_option("--mode", in.mode)->check(CLI::IsMember({"exhaustive", "bounded"}));
    s->add_option("--budget", in.budget);
    bind(s, "decompose", [&] {
      if (in.elem.empty() == in.matrix.empty()) throw InputError("give exactly one of --elem, --matrix");
      Json args{{"mode", in.mode}};
      if (in.budget) args["budget"] = in.budget;
      if (!in.elem.empty()) args["elem"] = in.elem;
      else args["matrix"] = maybe_inline(in.matrix);
      return std::pair{std::string("decompose"), args};
    });
  }

  auto* pr = group("probe", "exploratory searches");
  {
    auto* s = pr->add_subcommand("maxchain", "long strict chains of C.I.0 ideals");
    s->add_option("--start", in.start, "force the first link 0 < start");
    s->add_option("--budget", in.budget);
    bind(s, "probe maxchain", [&] {
      Json args = Json::object();
      if (!in.start.empty()) args["start"] = ideal_arg(in.start);
      if (in.budget) args["budget"] = in.budget;
      return std::pair{std::string("maxchain"), args};
    });
  }

  auto* rl = group("realize", "polynomial realizations");
  {
    auto* s = rl->add_subcommand("split", "defining relations (y'z', ...) for a generator y");
    s->add_option("--elem", in.elem)->required();
    bind(s, "realize split", [&] { return std::pair{std::string("realize"), Json{{"elem", in.elem}}}; });
  }

  auto* su = group("suite", "scenario suites");
  unsigned threads = 0;
  std::string dir;
  {
    auto* s = su->add_subcommand("run", "run every scenario in a directory");
    s->add_option("dir", dir)->required();
    s->add_option("--threads", threads, "worker count, default CI0_THREADS or 1");
    common(s, false);
    s->callback([&]() {
      action = [&]() {
        Report r = run_suite(dir, threads);
        if (c.json) std::cout << to_json(r).dump(2) << "\n";
        else std::cout << render_text(r);
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
        return r.ok() ? 0 : 1;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
