// Command-line front end: every pipeline of the library behind file-based
// inputs with a stable exit-code contract (0 clean, 1 mathematical
// failure, 2 input/usage error).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "flagstab/directed_system.hpp"
#include "flagstab/flags.hpp"
#include "flagstab/io.hpp"
#include "flagstab/lie_theorem.hpp"
#include "flagstab/liealg.hpp"
#include "flagstab/ultra.hpp"

namespace {

using namespace flagstab;

constexpr int kExitClean = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;

struct Printer {
  bool structured = false;

  void kv(const std::string& key, const std::string& value) const {
    if (structured)
      std::cout << key << " " << value << "\n";
    else
      std::cout << key << ": " << value << "\n";
  }
  void kv(const std::string& key, long long value) const { kv(key, std::to_string(value)); }
  void report(const Report& r) const {
    if (structured) {
      std::cout << "violations " << r.problems.size() << "\n";
      for (const auto& p : r.problems) std::cout << "violation " << p << "\n";
    } else {
      std::cout << r;
    }
  }
};

void write_out(const std::string& out_path, const std::function<void(std::ostream&)>& writer) {
  if (out_path.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write file: " + out_path);
  writer(out);
}

LieAlgebra load_valid_algebra(const std::string& path) {
  LieAlgebra L = io::read_algebra_file(path);
  const Report r = verify(L);
  if (!r.ok()) {
    std::ostringstream os;
    os << "algebra file " << path << " is not a Lie algebra: " << r.problems.front();
    throw Error(os.str());
  }
  return L;
}

Representation load_representation(const std::string& path, const LieAlgebra& L) {
  const io::RepresentationData data = io::read_representation_file(path);
  if (data.algebra_dim != L.dim())
    throw Error("representation algebra_dim does not match the algebra");
  return Representation(L, data.module_dim, data.action);
}

Subalgebra load_subalgebra(const std::string& sub_path, const LieAlgebra& L) {
  if (sub_path.empty()) return whole_algebra(L);
  return Subalgebra(L, io::read_subspace_file(sub_path));
}

int cmd_check(const Printer& print, const std::string& alg_path) {
  const LieAlgebra L = io::read_algebra_file(alg_path);
  const Report r = verify(L);
  print.kv("dim", L.dim());
  print.report(r);
  return r.ok() ? kExitClean : kExitMathFailure;
}

int cmd_solvable(const Printer& print, const std::string& alg_path, const std::string& sub_path) {
  const LieAlgebra L = load_valid_algebra(alg_path);
  const Subalgebra A = load_subalgebra(sub_path, L);
  const auto series = derived_series(A);
  std::ostringstream dims;
  for (std::size_t i = 0; i < series.size(); ++i) dims << (i ? " " : "") << series[i].dim();
  const bool solvable = series.back().is_zero();
  print.kv("series", dims.str());
  print.kv("solvable", solvable ? "true" : "false");
  if (!solvable) print.kv("stabilizes_at_dim", series.back().dim());
  return solvable ? kExitClean : kExitMathFailure;
}

int cmd_flag(const Printer& print, const std::string& alg_path, const std::string& rep_path,
             const std::string& sub_path, const std::string& out_path) {
  const LieAlgebra L = load_valid_algebra(alg_path);
  const Representation rep = load_representation(rep_path, L);
  const Subalgebra A = load_subalgebra(sub_path, L);
  const Flag flag = full_flag(rep, A);
  if (out_path.empty() && !print.structured) print.kv("flag_length", flag.length());
  write_out(out_path, [&](std::ostream& out) { io::write_flag(out, flag); });
  if (!out_path.empty()) print.kv("written", out_path);
  return kExitClean;
}

int cmd_stabilizer(const Printer& print, const std::string& flag_path,
                   const std::string& rep_path, const std::string& alg_path,
                   const std::string& sub_path, const std::string& out_path) {
  const LieAlgebra L = load_valid_algebra(alg_path);
  const Representation rep = load_representation(rep_path, L);
  const Subalgebra ambient = load_subalgebra(sub_path, L);
  const Flag flag = io::read_flag_file(flag_path);
  const Subalgebra st = stabilizer(flag, rep, ambient);
  print.kv("stabilizer_dim", st.dim());
  print.kv("solvable", is_solvable(st) ? "true" : "false");
  write_out(out_path, [&](std::ostream& out) { io::write_subspace(out, st.space()); });
  if (!out_path.empty()) print.kv("written", out_path);
  return kExitClean;
}

int cmd_faithful(const Printer& print, const std::string& alg_path, const std::string& rep_path,
                 const std::string& sub_path) {
  const LieAlgebra L = load_valid_algebra(alg_path);
  const Representation rep = load_representation(rep_path, L);
  const Subalgebra A = load_subalgebra(sub_path, L);
  const FaithfulSubmoduleRun run = faithful_submodule(rep, A);
  std::ostringstream dims;
  for (std::size_t i = 0; i < run.kernel_dims.size(); ++i)
    dims << (i ? " " : "") << run.kernel_dims[i];
  print.kv("kernel_dims", dims.str());
  print.kv("enlargements", run.enlargements());
  print.kv("submodule_dim", run.submodule.dim());
  return kExitClean;
}

int cmd_ultra_fip(const Printer& print, const std::string& fam_path) {
  const bool fip = ultra::has_fip(io::read_family_file(fam_path));
  print.kv("fip", fip ? "true" : "false");
  return fip ? kExitClean : kExitMathFailure;
}

int cmd_ultra_generate(const Printer& print, const std::string& fam_path,
                       const std::string& out_path) {
  const ultra::SetFamily filter = ultra::generate_filter(io::read_family_file(fam_path));
  print.kv("members", static_cast<long long>(filter.members.size()));
  write_out(out_path, [&](std::ostream& out) { io::write_family(out, filter); });
  if (!out_path.empty()) print.kv("written", out_path);
  return kExitClean;
}

int cmd_ultra_check(const Printer& print, const std::string& fam_path) {
  const ultra::SetFamily family = io::read_family_file(fam_path);
  const bool filter = ultra::is_filter(family);
  const bool ultrafilter = filter && ultra::is_ultrafilter(family);
  print.kv("filter", filter ? "true" : "false");
  print.kv("ultrafilter", ultrafilter ? "true" : "false");
  return filter ? kExitClean : kExitMathFailure;
}

int cmd_ultra_enumerate(const Printer& print, int size) {
  const auto ultrafilters = ultra::enumerate_ultrafilters(ultra::GroundSet(size));
  print.kv("count", static_cast<long long>(ultrafilters.size()));
  for (const auto& uf : ultrafilters) {
    std::ostringstream os;
    os << "point " << uf.principal_point() << " members " << uf.members().size();
    print.kv("ultrafilter", os.str());
  }
  return kExitClean;
}

int cmd_ultra_ultraflag(const Printer& print, const std::string& dims_text, int point) {
  std::vector<Index> dims;
  std::istringstream ds(dims_text);
  std::string token;
  while (std::getline(ds, token, ',')) {
    try {
      dims.push_back(static_cast<Index>(std::stoll(token)));
    } catch (const std::exception&) {
      throw std::runtime_error("bad dimension list: " + dims_text);
    }
  }
  const auto sys = ultra::standard_ultraflag(dims, point);
  const Report r = ultra::verify_ultraflag(sys);
  print.kv("classes", static_cast<long long>(dims.empty() ? 0 : sys.dims()[static_cast<std::size_t>(point)] + 1));
  print.report(r);
  return r.ok() ? kExitClean : kExitMathFailure;
}

int cmd_ultra_malcev(const Printer& print, const std::string& name) {
  for (const auto& structure : ultra::shipped_structures()) {
    if (structure.name() != name) continue;
    const ultra::MalcevEmbedding emb = ultra::malcev_embedding(structure);
    print.kv("structure", structure.name());
    print.kv("index_set", emb.ground.size);
    print.kv("cones", static_cast<long long>(emb.cones.members.size()));
    print.report(emb.report);
    return emb.report.ok() ? kExitClean : kExitMathFailure;
  }
  std::ostringstream known;
  for (const auto& s : ultra::shipped_structures()) known << " " << s.name();
  throw std::runtime_error("unknown structure '" + name + "'; shipped:" + known.str());
}

int cmd_demo(const Printer& print, int levels, int probe_trials, std::uint64_t seed,
             const std::string& chain_out) {
  const AlgebraChain chain = build_gl_chain(levels);
  const auto borels = borel_subchain(chain);
  const auto flags = flags_per_level(chain, borels);
  Report report = verify_main_theorem(chain, borels, flags);
  for (Index n = 0; n < chain.levels(); ++n) {
    std::ostringstream os;
    os << "level " << n << " stabilizer_dim " << borels[static_cast<std::size_t>(n)].dim()
       << " stabilizer_is_borel true";
    print.kv("demo", os.str());
  }
  if (probe_trials > 0) {
    for (Index n = 0; n < chain.levels(); ++n) {
      const MaximalityProbe probe = one_step_maximality_probe(
          chain.algebra(n), borels[static_cast<std::size_t>(n)], probe_trials, seed);
      std::ostringstream os;
      os << "level " << n << " " << (probe.report.ok() ? "clean" : "witness_found");
      print.kv("probe", os.str());
      report.merge(probe.report, "probe: ");
    }
  }
  if (!chain_out.empty()) {
    write_out(chain_out, [&](std::ostream& out) { io::write_chain(out, chain); });
    print.kv("written", chain_out);
  }
  print.report(report);
  return report.ok() ? kExitClean : kExitMathFailure;
}

int cmd_chaincheck(const Printer& print, const std::string& path) {
  const AlgebraChain chain = io::read_chain_file(path);
  Report report = check_chain_invariants(chain);
  for (Index n = 0; n < chain.levels(); ++n) {
    const Report algebra_report = verify(chain.algebra(n));
    report.merge(algebra_report, "level " + std::to_string(n) + ": ");
  }
  print.kv("levels", chain.levels());
  print.report(report);
  return report.ok() ? kExitClean : kExitMathFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flags, stabilizers and ultraproducts for locally finite Lie algebras"};
  app.require_subcommand(1);

  Printer print;
  std::string format = "human";
  app.add_option("--format", format, "output format: human or structured")
      ->check(CLI::IsMember({"human", "structured"}));

  std::string alg_path, rep_path, flag_path, fam_path, sub_path, out_path, chain_path;
  std::string dims_text, structure_name;
  int size = 1, point = 0, levels = 1, probe_trials = 0;
  std::uint64_t seed = 12345;

  auto* check = app.add_subcommand("check", "verify a structure-constants file");
  check->add_option("algebra", alg_path)->required();

  auto* solvable = app.add_subcommand("solvable", "derived series and solvability verdict");
  solvable->add_option("algebra", alg_path)->required();
  solvable->add_option("--sub", sub_path, "subspace file restricting to a subalgebra");

  auto* flag = app.add_subcommand("flag", "full flag via Lie's theorem");
  flag->add_option("algebra", alg_path)->required();
  flag->add_option("representation", rep_path)->required();
  flag->add_option("--sub", sub_path);
  flag->add_option("--out", out_path, "write the flag document here");

  auto* stab = app.add_subcommand("stabilizer", "stabilizer of a flag in an algebra");
  stab->add_option("flag", flag_path)->required();
  stab->add_option("representation", rep_path)->required();
  stab->add_option("algebra", alg_path)->required();
  stab->add_option("--sub", sub_path, "ambient subalgebra (default: whole algebra)");
  stab->add_option("--out", out_path, "write the stabilizer subspace here");

  auto* faithful = app.add_subcommand("faithful", "faithful-submodule procedure");
  faithful->add_option("algebra", alg_path)->required();
  faithful->add_option("representation", rep_path)->required();
  faithful->add_option("--sub", sub_path);

  auto* ultra_cmd = app.add_subcommand("ultra", "filters, ultrafilters, ultraproducts");
  ultra_cmd->require_subcommand(1);
  auto* fip = ultra_cmd->add_subcommand("fip", "finite intersection property");
  fip->add_option("family", fam_path)->required();
  auto* generate = ultra_cmd->add_subcommand("generate", "least filter containing a family");
  generate->add_option("family", fam_path)->required();
  generate->add_option("--out", out_path);
  auto* ucheck = ultra_cmd->add_subcommand("check", "filter / ultrafilter axioms");
  ucheck->add_option("family", fam_path)->required();
  auto* enumerate = ultra_cmd->add_subcommand("enumerate", "all ultrafilters on a ground set");
  enumerate->add_option("size", size)->required()->check(CLI::Range(1, 20));
  auto* ultraflag = ultra_cmd->add_subcommand("ultraflag", "flag ultraproduct verification");
  ultraflag->add_option("dims", dims_text, "factor dimensions, e.g. 1,2,3")->required();
  ultraflag->add_option("point", point, "principal ultrafilter point")->required();
  auto* malcev = ultra_cmd->add_subcommand("malcev", "Malcev embedding of a shipped structure");
  malcev->add_option("structure", structure_name)->required();

  auto* demo = app.add_subcommand("demo", "main-theorem reproduction on the gl chain");
  demo->add_option("levels", levels)->required()->check(CLI::Range(1, 6));
  demo->add_option("--probe", probe_trials, "maximality probe trials per level");
  demo->add_option("--seed", seed, "probe seed");
  demo->add_option("--write-chain", chain_path, "dump the chain document");

  auto* chaincheck = app.add_subcommand("chaincheck", "validate a chain document");
  chaincheck->add_option("chain", chain_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitClean : kExitUsage;
  }
  print.structured = format == "structured";

  try {
    if (*check) return cmd_check(print, alg_path);
    if (*solvable) return cmd_solvable(print, alg_path, sub_path);
    if (*flag) return cmd_flag(print, alg_path, rep_path, sub_path, out_path);
    if (*stab) return cmd_stabilizer(print, flag_path, rep_path, alg_path, sub_path, out_path);
    if (*faithful) return cmd_faithful(print, alg_path, rep_path, sub_path);
    if (*fip) return cmd_ultra_fip(print, fam_path);
    if (*generate) return cmd_ultra_generate(print, fam_path, out_path);
    if (*ucheck) return cmd_ultra_check(print, fam_path);
    if (*enumerate) return cmd_ultra_enumerate(print, size);
    if (*ultraflag) return cmd_ultra_ultraflag(print, dims_text, point);
    if (*malcev) return cmd_ultra_malcev(print, structure_name);
    if (*demo) return cmd_demo(print, levels, probe_trials, seed, chain_path);
    if (*chaincheck) return cmd_chaincheck(print, chain_path);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitMathFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
