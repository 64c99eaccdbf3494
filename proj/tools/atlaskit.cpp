#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "atlaskit.hpp"

namespace fs = std::filesystem;
using namespace atlaskit;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

struct Options {
  std::string input;
  std::string algebra;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::string output;
  bool epos = false;
  bool model = false;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A kit from a file, or from the catalog when no such file exists.
struct Loaded {
  std::optional<GluingFile> kit;
  std::optional<ConcreteAtlas> atlas;
  std::string label;
};

Loaded load(const std::string& input, const std::string& algebra_override, const fs::path& base = {}) {
  Loaded l;
  l.label = input;
  fs::path p = base.empty() ? fs::path(input) : base / input;
  if (fs::is_regular_file(p)) {
    try {
      l.kit = parse_gluing_file(read_file(p));
    } catch (const SyntaxError& e) {
      throw SyntaxError(e.line(), e.column(), p.string() + ": " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    }
  } else if (auto k = catalog_kit(input)) {
    l.kit = *k;
  } else if (auto a = catalog_atlas(input)) {
    l.atlas = *a;
  } else {
    throw InputError("'" + input + "' is neither a file nor a catalog name");
  }
  if (!algebra_override.empty()) {
    if (!l.kit) throw InputError("--algebra applies to kits only");
    Algebra::parse(algebra_override);
    l.kit->algebra = algebra_override;
  }
  return l;
}

GluingData gluing_data(const Loaded& l) {
  if (l.atlas) return extract_gluing_data(*l.atlas);
  return build_gluing_data(*l.kit);
}

std::string describe(const GluingData& g) {
  std::ostringstream os;
  os << "algebra " << g.algebra.descriptor() << "\ndim " << g.dim << "\nindices " << g.size() << "\n";
  for (Id i = 0; i < g.size(); ++i) {
    os << "index " << g.name(i) << " |V|=" << g.ranges[i].size();
    if (g.range_predicates[i]) os << " where " << to_string(*g.range_predicates[i]);
    os << "\n";
  }
  for (const auto& cls : g.epos.classes()) {
    os << "E {";
    for (std::size_t k = 0; k < cls.size(); ++k) os << (k ? "," : "") << g.name(cls[k]);
    os << "}\n";
  }
  for (auto [lo, hi] : g.epos.order.hasse_covers().pairs()) os << "L " << g.name(lo) << " < " << g.name(hi) << "\n";
  for (const auto& [key, k] : g.meets)
    if (key.first < key.second) os << "meet [" << g.name(key.first) << "," << g.name(key.second) << "] = " << g.name(k) << "\n";
  return os.str();
}

int cmd_validate(const Options& o, std::ostream& out) {
  Loaded l = load(o.input, o.algebra);
  if (l.atlas) {
    auto rep = validate_concrete_atlas(*l.atlas);
    out << rep.to_text();
    if (!rep.valid()) return kInvalid;
    auto g = validate_gluing_data(extract_gluing_data(*l.atlas));
    out << g.to_text();
    return g.valid() ? kOk : kInvalid;
  }
  const Algebra A = Algebra::parse(l.kit->algebra);
  if (!A.finite()) {
    auto rep = sampled_kit_check(*l.kit, o.samples, o.seed);
    auto ids = alternative_battery(A, o.samples, o.seed);
    out << rep.to_text() << ids.to_text() << "\n";
    return rep.valid() && ids.all_hold() ? kOk : kInvalid;
  }
  GluingData g;
  try {
    g = build_gluing_data(*l.kit);
  } catch (const InvalidStructure& e) {
    out << "GENERATE: fail " << e.what() << "\n";
    return kInvalid;
  }
  auto rep = validate_gluing_data(g);
  out << rep.to_text();
  return rep.valid() ? kOk : kInvalid;
}

std::shared_ptr<const ManifoldModel> glued(const Loaded& l) {
  return std::make_shared<const ManifoldModel>(glue(gluing_data(l)));
}

int cmd_morphism(const Options& o, std::ostream& out) {
  const fs::path file(o.input);
  if (!fs::is_regular_file(file)) throw InputError("morphism kit '" + o.input + "' not found");
  MorphismFile mf = parse_morphism_file(read_file(file));
  auto src = glued(load(mf.source, "", file.parent_path()));
  auto tgt = glued(load(mf.target, "", file.parent_path()));
  ClassMap f = map_from_chart_formulas(*src, *tgt, mf.components);
  MorphismData d = extract_morphism_data(src, tgt, f);
  auto rep = validate_morphism_data(d);
  out << rep.to_text();
  const bool full = is_full(d);
  const bool cont = atlas_continuous(*src, *tgt, f);
  out << "full: " << (full ? "yes" : "no") << "\natlas-continuous: " << (cont ? "yes" : "no") << "\n";
  std::set<std::size_t> image(f.begin(), f.end());
  out << "image " << image.size() << "\n";
  for (std::size_t x = 0; x < f.size(); ++x)
    out << "map " << seed_text(*src->source, src->representatives[x]) << " -> "
        << seed_text(*tgt->source, tgt->representatives[f[x]]) << "\n";
  if (full && rep.valid() && reconstruct_map(d) != f) {
    out << "reconstruction: fail\n";
    return kInvalid;
  }
  return rep.valid() && full ? kOk : kInvalid;
}

int run(const std::string& command, const Options& o, std::ostream& out) {
  if (command == "validate") return cmd_validate(o, out);
  if (command == "morphism") return cmd_morphism(o, out);
  if (command == "catalog") {
    if (o.input.empty()) {
      for (const auto& e : catalog_entries()) out << e.name << "  " << e.description << "\n";
      return kOk;
    }
    Loaded l = load(o.input, o.algebra);
    if (!l.kit) throw InputError("'" + o.input + "' is an atlas, not a kit");
    out << serialize(*l.kit);
    return kOk;
  }
  Loaded l = load(o.input, o.algebra);
  if (command == "build") {
    out << describe(gluing_data(l));
    return kOk;
  }
  if (command == "dot") {
    GluingData g = gluing_data(l);
    if (o.model)
      out << model_dot(glue(g), o.input);
    else
      out << epos_dot(g.epos, o.input);
    return kOk;
  }
  if (command == "reconstruct") {
    out << dump(glue(gluing_data(l)));
    return kOk;
  }
  if (command == "count") {
    out << count_points(glue(gluing_data(l))) << "\n";
    return kOk;
  }
  if (command == "tangent") {
    out << dump(glue(weil_transport(gluing_data(l))));
    return kOk;
  }
  throw InputError("unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atlaskit: finite atlas data, gluing and morphism checks"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub, bool needs_input) {
    sub->add_option("--algebra", o.algebra, "override the kit algebra (Fp:<p>, Q, dual:<d>, cd:<d>:<levels>)");
    sub->add_option("--seed", o.seed, "random seed for sampled checks");
    sub->add_option("--samples", o.samples, "sample count for checks over infinite algebras");
    sub->add_option("-o,--output", o.output, "write to FILE instead of standard output");
    auto* in = sub->add_option("input", o.input, "kit file or catalog name");
    if (needs_input) in->required();
  };
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "check a kit or atlas; exit 1 when a condition fails"},
      {"build", "print the generated gluing data"},
      {"reconstruct", "print the glued model"},
      {"count", "print the number of points of the glued model"},
      {"tangent", "print the glued model of the dual-number transport"},
      {"dot", "emit a DOT graph of the e-pos (or of the model with --model)"},
      {"morphism", "check a morphism kit"},
      {"catalog", "list catalog names, or print the kit text of one"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, name != "catalog");
    if (name == "dot") {
      sub->add_flag("--epos", o.epos, "draw the e-pos (default)");
      sub->add_flag("--model", o.model, "draw charts and points of the glued model");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  std::ostringstream buffer;
  int code;
  try {
    code = run(command, o, buffer);
  } catch (const SyntaxError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUsage;
  } catch (const SizeBoundError& e) {
    std::cerr << "size bound: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cout << buffer.str() << "invalid: " << e.what() << "\n";
    return kInvalid;
  }
  if (o.output.empty()) {
    std::cout << buffer.str();
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << o.output << "\n";
      return kUsage;
    }
    f << buffer.str();
  }
  return code;
}
