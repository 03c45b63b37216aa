#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "toytheory/catalog.hpp"
#include "toytheory/entanglement.hpp"
#include "toytheory/errors.hpp"
#include "toytheory/measurement.hpp"
#include "toytheory/mixture_superposition.hpp"
#include "toytheory/oracle.hpp"
#include "toytheory/serialization.hpp"
#include "toytheory/transformations.hpp"

using namespace toytheory;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct UsageError {
  std::string message;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json state_json(const EpistemicState& s, Formalism f = Formalism::General) { return Json::parse(serialize_state(s, f)); }

EpistemicState load_state(const std::string& path) { return parse_state(read_input(path)); }

// "1,0,-1" -> entries; whitespace tolerated.
std::vector<Scalar> parse_ints(const std::string& text) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError{"expected a comma-separated list of integers, got '" + text + "'"};
    }
  }
  return out;
}

ModVector parse_vector(const std::string& text, const PhaseSpace& ps) {
  const auto entries = parse_ints(text);
  if (entries.size() != ps.dim())
    fail(ErrorCode::DimensionMismatch, "vector '" + text + "' needs " + std::to_string(ps.dim()) + " entries");
  return ps.vec(entries);
}

std::size_t system_index(Scalar one_based, const PhaseSpace& ps) {
  if (one_based < 1 || static_cast<std::size_t>(one_based) > ps.n())
    fail(ErrorCode::IndexError, "system " + std::to_string(one_based) + " out of range 1.." + std::to_string(ps.n()));
  return static_cast<std::size_t>(one_based - 1);
}

std::string probability_text(const Probability& p) {
  return p.denominator() == 1 ? std::to_string(p.numerator())
                              : std::to_string(p.numerator()) + "/" + std::to_string(p.denominator());
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

// gate specs: cnot:C,T  fourier:S  shear:S  swap:I,J  local:S:a,b,c,d  displace:v
SymplecticMap parse_gate(const std::string& spec, const PhaseSpace& ps) {
  const auto colon = spec.find(':');
  const auto name = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (name == "displace") return displacement(parse_vector(rest, ps), ps);
  if (name == "local") {
    const auto second = rest.find(':');
    if (second == std::string::npos) throw UsageError{"local gate needs local:S:a,b,c,d"};
    const auto sys = parse_ints(rest.substr(0, second));
    const auto block = parse_ints(rest.substr(second + 1));
    if (sys.size() != 1 || block.size() != 4) throw UsageError{"local gate needs local:S:a,b,c,d"};
    return local_map(system_index(sys[0], ps), {block[0], block[1], block[2], block[3]}, ps);
  }
  const auto args = parse_ints(rest);
  if ((name == "cnot" || name == "swap") && args.size() == 2) {
    const auto a = system_index(args[0], ps);
    const auto b = system_index(args[1], ps);
    return name == "cnot" ? toy_cnot(a, b, ps) : swap_systems(a, b, ps);
  }
  if ((name == "fourier" || name == "shear") && args.size() == 1) {
    const auto a = system_index(args[0], ps);
    return name == "fourier" ? fourier(a, ps) : phase_shear(a, ps);
  }
  throw UsageError{"unknown gate '" + spec + "'"};
}

SymplecticMap parse_map_file(const std::string& path, const PhaseSpace& ps) {
  Json j;
  try {
    j = Json::parse(read_input(path));
  } catch (const Json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("map file: ") + e.what());
  }
  if (!j.contains("matrix")) fail(ErrorCode::InvalidArgument, "map file needs 'matrix'");
  std::vector<ModVector> rows;
  for (const auto& r : j["matrix"]) {
    const auto entries = r.get<std::vector<Scalar>>();
    if (entries.size() != ps.dim()) fail(ErrorCode::DimensionMismatch, "map matrix has the wrong width");
    rows.push_back(ps.vec(entries));
  }
  const auto a = j.contains("displacement") ? ps.vec(j["displacement"].get<std::vector<Scalar>>()) : ps.zero();
  return SymplecticMap(ps, ModMatrix(rows, ps.dim()), a);
}

Bipartition parse_split(const std::string& text, std::size_t n) {
  std::set<std::size_t> side;
  for (const auto k : parse_ints(text)) {
    if (k < 1 || static_cast<std::size_t>(k) > n) throw UsageError{"split names a missing system"};
    side.insert(static_cast<std::size_t>(k - 1));
  }
  return make_bipartition(n, side);
}

Json split_json(const Bipartition& bp) {
  Json a = Json::array(), b = Json::array();
  for (const auto k : bp.a) a.push_back(k + 1);
  for (const auto k : bp.b) b.push_back(k + 1);
  return Json{{"a", a}, {"b", b}};
}

StateFamily family_of(const std::vector<std::string>& paths) {
  std::vector<EpistemicState> members;
  for (const auto& p : paths) members.push_back(load_state(p));
  return StateFamily::of(members);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Epistemic toy theory over Z_d phase space"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string file;
  std::vector<std::string> files;

  auto* validate = app.add_subcommand("validate", "Check a state file");
  validate->add_option("file", file, "State file, - for stdin")->required();

  auto* render = app.add_subcommand("render", "Print the grid of a d=2 state");
  render->add_option("file", file)->required();

  std::vector<std::string> observables;
  std::string outcome;
  bool do_sample = false;
  std::uint64_t seed = 1;
  auto* measure = app.add_subcommand("measure", "Measure quadrature observables");
  measure->add_option("file", file)->required();
  measure->add_option("--observable", observables, "Observable as comma-separated entries")->required();
  auto* outcome_opt = measure->add_option("--outcome", outcome, "Valuation vector of the outcome");
  auto* sample_opt = measure->add_flag("--sample", do_sample, "Draw an outcome");
  measure->add_option("--seed", seed, "Seed for --sample");
  outcome_opt->excludes(sample_opt);

  std::vector<std::string> gates;
  std::string map_file;
  auto* transform = app.add_subcommand("transform", "Apply gates or a symplectic-affine map");
  transform->add_option("file", file)->required();
  transform->add_option("--gate", gates, "cnot:C,T fourier:S shear:S swap:I,J local:S:a,b,c,d displace:v");
  transform->add_option("--map", map_file, "JSON file with matrix and displacement");

  auto* mix_cmd = app.add_subcommand("mix", "Mix states sharing one known space");
  mix_cmd->add_option("files", files)->required();

  std::string new_observable;
  std::size_t phase = 0;
  bool list_choices = false;
  auto* superpose_cmd = app.add_subcommand("superpose", "Superpose states over one observable");
  superpose_cmd->add_option("files", files)->required();
  superpose_cmd->add_option("--observable", new_observable, "Replacement observable");
  superpose_cmd->add_option("--phase", phase, "Member whose valuation fixes the phase");
  superpose_cmd->add_flag("--list", list_choices, "List admissible observables");

  std::string split;
  auto* entangle = app.add_subcommand("entangle", "Classify a state across bipartitions");
  entangle->add_option("file", file)->required();
  entangle->add_option("--split", split, "Systems on side A, e.g. 1 or 1,3");

  std::string target = "general";
  auto* convert = app.add_subcommand("convert", "Rewrite a state in another formalism");
  convert->add_option("file", file)->required();
  convert->add_option("--to", target, "general, stabilizer or grid")->required();

  Scalar d = 2;
  std::size_t n = 1;
  bool list_states = false;
  auto* enumerate = app.add_subcommand("enumerate", "Count every valid state");
  enumerate->add_option("--d", d)->required();
  enumerate->add_option("--n", n)->required();
  enumerate->add_flag("--list", list_states, "Also print the states");

  std::string moduli = "2,3";
  std::string sizes = "1,2";
  unsigned threads = 0;
  std::uint64_t fuzz_cases = 1000;
  bool timings = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "Run the verification battery");
  oracle_cmd->add_option("--d", moduli, "Moduli, comma-separated");
  oracle_cmd->add_option("--n", sizes, "System counts, comma-separated");
  oracle_cmd->add_option("--seed", seed);
  oracle_cmd->add_option("--threads", threads, "Worker threads; 0 uses TOYTHEORY_ORACLE_THREADS or all cores");
  oracle_cmd->add_option("--fuzz-cases", fuzz_cases);
  oracle_cmd->add_flag("--timings", timings, "Include wall-clock per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << Json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    return kUsageError;
  }

  try {
    if (*validate) {
      const auto f = parse_state_file(read_input(file));
      if (!f.verdict.valid()) {
        emit({{"valid", false}, {"reason", f.verdict.reason}});
        return kDomainError;
      }
      const auto& s = *f.verdict.state;
      emit({{"valid", true}, {"pure", is_pure(s)}, {"support_size", support(s).cardinality()}});
    } else if (*render) {
      std::cout << render_grid(load_state(file));
    } else if (*measure) {
      const auto s = load_state(file);
      std::vector<Observable> obs;
      for (const auto& o : observables) obs.push_back(parse_vector(o, s.space()));
      const Measurement m(s.space(), obs);
      if (!outcome.empty()) {
        const auto v = parse_vector(outcome, s.space());
        emit({{"probability", probability_text(outcome_probability(m, v, s))}, {"state", state_json(update(m, v, s))}});
      } else if (do_sample) {
        std::mt19937_64 rng(seed);
        const auto [o, post] = sample(m, s, rng);
        emit({{"outcome", o.valuation.entries()}, {"probability", probability_text(o.probability)}, {"state", state_json(post)}});
      } else {
        Json list = Json::array();
        for (const auto& o : outcomes(m, s))
          list.push_back({{"outcome", o.valuation.entries()}, {"probability", probability_text(o.probability)}});
        emit({{"outcomes", list}});
      }
    } else if (*transform) {
      const auto s = load_state(file);
      if (gates.empty() == map_file.empty()) throw UsageError{"give either --gate options or --map"};
      auto t = SymplecticMap::identity(s.space());
      if (!map_file.empty()) t = parse_map_file(map_file, s.space());
      for (const auto& g : gates) t = compose(parse_gate(g, s.space()), t);
      emit(state_json(apply(t, s)));
    } else if (*mix_cmd) {
      emit(state_json(mix(family_of(files))));
    } else if (*superpose_cmd) {
      const auto fam = family_of(files);
      if (list_choices) {
        Json list = Json::array();
        for (const auto& f : enumerate_superposition_choices(fam)) list.push_back(f.entries());
        emit({{"choices", list}});
      } else {
        if (new_observable.empty()) throw UsageError{"superpose needs --observable or --list"};
        emit(state_json(superpose(fam, parse_vector(new_observable, fam.space()), phase)));
      }
    } else if (*entangle) {
      const auto s = load_state(file);
      std::vector<Bipartition> splits;
      if (!split.empty()) splits.push_back(parse_split(split, s.space().n()));
      else splits = all_bipartitions(s.space().n());
      Json list = Json::array();
      for (const auto& bp : splits) {
        const auto c = classify_entanglement(s, bp);
        Json entry{{"split", split_json(bp)}, {"kind", std::string(kind_name(c.kind))}};
        if (c.witness) {
          Json members = Json::array();
          for (std::size_t j = 0; j < c.witness->size(); ++j) members.push_back(state_json(c.witness->member(j)));
          entry["mixture_of"] = members;
        }
        list.push_back(entry);
      }
      emit({{"pure", is_pure(s)}, {"bipartitions", list}});
    } else if (*convert) {
      const auto f = parse_formalism(target);
      emit(state_json(load_state(file), f));
    } else if (*enumerate) {
      const auto summary = summarize_catalog(Modulus(d), n);
      Json out{{"total", summary.total}, {"pure", summary.pure}, {"mixed", summary.mixed}};
      if (!summary.bipartitions.empty()) {
        Json list = Json::array();
        for (const auto& b : summary.bipartitions)
          list.push_back({{"split", split_json(b.bipartition)},
                          {"product", b.product},
                          {"correlated", b.correlated},
                          {"entangled", b.entangled}});
        out["bipartitions"] = list;
      }
      if (list_states) {
        Json list = Json::array();
        for (const auto& s : state_catalog(Modulus(d), n)) list.push_back(state_json(s));
        out["states"] = list;
      }
      emit(out);
    } else if (*oracle_cmd) {
      oracle::Options opts;
      opts.moduli = parse_ints(moduli);
      opts.sizes.clear();
      for (const auto k : parse_ints(sizes)) {
        if (k < 1) throw UsageError{"--n values must be positive"};
        opts.sizes.push_back(static_cast<std::size_t>(k));
      }
      for (const auto m : opts.moduli)
        if (m < 2) throw UsageError{"--d values must be at least 2"};
      opts.seed = seed;
      opts.threads = threads;
      opts.fuzz_cases = fuzz_cases;
      const auto report = oracle::run_oracle(opts);
      std::cout << report.to_json(timings) << "\n";
      return report.all_passed() ? 0 : kDomainError;
    }
  } catch (const UsageError& e) {
    std::cerr << Json{{"error", "UsageError"}, {"message", e.message}}.dump() << "\n";
    return kUsageError;
  } catch (const PartiallyKnownError& e) {
    Json witness = Json::array();
    for (const auto& w : e.witness()) witness.push_back(w.entries());
    std::cerr << Json{{"error", std::string(error_name(e.code()))}, {"message", e.what()}, {"witness", witness}}.dump()
              << "\n";
    return kDomainError;
  } catch (const ToyError& e) {
    std::cerr << Json{{"error", std::string(error_name(e.code()))}, {"message", e.what()}}.dump() << "\n";
    return kDomainError;
  }
  return 0;
}
