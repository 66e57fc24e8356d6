// pi1scan: fundamental groups of small simplicial complexes.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <set>

#include <omp.h>

#include <CLI11.hpp>

#include "pi1scan/io.hpp"

namespace fs = std::filesystem;
using namespace pi1scan;

namespace {

constexpr int kExitMismatch = 2;
constexpr int kExitResource = 3;

struct Limits {
  int workers = 0;
  long tietze_budget = kDefaultTietzeBudget;
  std::int64_t coset_limit = kDefaultCosetLimit;
  std::uint64_t hom_cap = kDefaultHomWorkCap;

  void add_to(CLI::App* app) {
    app->add_option("--workers", workers, "Worker threads (default: PI1SCAN_WORKERS or all cores)");
    app->add_option("--tietze-budget", tietze_budget, "Tietze steps per presentation")->check(CLI::PositiveNumber);
    app->add_option("--coset-limit", coset_limit, "Coset table size limit")->check(CLI::PositiveNumber);
    app->add_option("--hom-cap", hom_cap, "Relator checks per homomorphism count")->check(CLI::PositiveNumber);
  }

  void apply() const {
    int w = workers;
    if (w <= 0)
      if (const char* env = std::getenv("PI1SCAN_WORKERS")) w = std::atoi(env);
    if (w > 0) omp_set_num_threads(w);
  }

  RecognizeOptions recognize() const { return {coset_limit, hom_cap}; }
  KernelOptions kernel() const {
    KernelOptions k;
    k.tietze_budget = tietze_budget;
    k.recognize = recognize();
    return k;
  }
};

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<std::uint64_t> read_mask_list(const fs::path& path, int n) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::vector<std::uint64_t> out;
  for (const Complex& k : parse_complexes(in)) {
    if (k.vertex_count() != n) throw ParseError(path.string() + ": complex on " + std::to_string(k.vertex_count()) +
                                                " vertices, expected " + std::to_string(n));
    out.push_back(TriangleComplex::from_complex(k).mask());
  }
  return out;
}

Complex mask_complex(int n, std::uint64_t mask) { return TriangleComplex::from_mask(n, mask).to_complex(); }

// ---------------------------------------------------------------------------

int cmd_count(const std::string& kind_name, int n) {
  const CountKind kind = parse_count_kind(kind_name);
  BigInt value;
  std::string source;
  std::optional<BigInt> reference;
  if (n >= 0 && n <= 9) reference = count_reference(kind, n);
  if (kind == CountKind::H3) {
    value = qian_h3(n);
    source = "partition-sum formula";
  } else if (kind == CountKind::Dedekind && n <= 4) {
    value = kisielewicz_d(n);
    source = "antichain summation";
  } else {
    if (!reference) throw std::out_of_range("no published value for n = " + std::to_string(n) + " (0..9)");
    value = *reference;
    source = "published value";
  }
  std::cout << value << '\t' << source;
  if (reference && source != "published value") {
    if (*reference != value) {
      std::cout << "; MISMATCH with published " << *reference << '\n';
      return kExitMismatch;
    }
    std::cout << "; matches published value";
  }
  std::cout << '\n';
  return 0;
}

struct EnumerateArgs {
  int n = 0;
  std::string filter = "spanning-connected";
  std::string shard = "1/1";
  std::string format = "text";
  std::string out;
  std::string checkpoint;
  std::uint64_t every = 100000;
  bool resume = false;
  bool count_only = false;
};

int cmd_enumerate(const EnumerateArgs& a) {
  const EnumFilter filter = parse_enum_filter(a.filter);
  const Shard shard = parse_shard(a.shard);
  if (a.count_only) {
    std::cout << count_2pure(a.n, filter, shard) << '\n';
    return 0;
  }
  std::uint64_t skip = 0;
  if (a.resume && !a.checkpoint.empty() && fs::exists(a.checkpoint)) {
    std::ifstream in(a.checkpoint);
    std::string line;
    while (std::getline(in, line)) {
      try {
        const json j = json::parse(line);
        skip = j.at("emitted").get<std::uint64_t>();
      } catch (const json::exception&) {
        break;
      }
    }
  }
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out, skip ? std::ios::app : std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + a.out);
  }
  std::ostream& out = a.out.empty() ? std::cout : file;
  std::optional<JsonlWriter> ckpt;
  if (!a.checkpoint.empty()) ckpt.emplace(a.checkpoint, a.resume);
  std::uint64_t emitted = 0;
  std::uint64_t last = 0;
  enumerate_2pure(a.n, filter, shard, [&](std::uint64_t mask) {
    ++emitted;
    last = mask;
    if (emitted > skip) {
      if (a.format == "hex")
        out << mask_hex(mask) << '\n';
      else if (a.format == "json")
        out << render_json(mask_complex(a.n, mask)) << '\n';
      else
        out << render_text(mask_complex(a.n, mask)) << '\n';
    }
    if (ckpt && emitted > skip && emitted % a.every == 0) {
      out.flush();
      ckpt->write({{"shard", shard.index + 1}, {"emitted", emitted}, {"last", mask_hex(mask)}});
    }
  });
  out.flush();
  if (ckpt) ckpt->write({{"shard", shard.index + 1}, {"emitted", emitted}, {"last", mask_hex(last)}, {"done", true}});
  std::cerr << emitted << " complexes\n";
  return 0;
}

int cmd_pure(int n, const std::string& mode_name, const std::string& out, const Limits& limits) {
  const SearchMode mode = parse_search_mode(mode_name);
  Stopwatch sw;
  const PureSet pure = build_pure(n, mode, limits.kernel());
  std::cout << pure.masks.size() << '\n';
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    for (auto m : pure.masks) f << render_text(mask_complex(n, m)) << '\n';
  }
  std::cerr << "Pure(" << n << ", " << mode_name << ") in " << sw.seconds() << " s\n";
  return 0;
}

struct RunArgs {
  int n = 0;
  std::string mode = "noncyclic";
  std::string shard;
  int shards = 1;
  std::string out = ".";
  std::string resume;
  std::string pure;
  bool split_prune = false;
  bool no_prune = false;
  std::size_t max_units = 0;
};

int cmd_run(const RunArgs& a, const Limits& limits) {
  const SearchMode mode = parse_search_mode(a.mode);
  if (a.n < 4 || a.n > 8) throw std::out_of_range("run supports 4 <= n <= 8");
  if (a.n == 8 && mode == SearchMode::Nontrivial)
    std::cerr << "warning: the full n = 8 run computes about 1.5e10 groups\n";
  const fs::path dir = a.resume.empty() ? fs::path(a.out) : fs::path(a.resume);
  fs::create_directories(dir);
  const int l = a.n - 1;

  Stopwatch sw;
  PureSet pure;
  if (!a.pure.empty()) {
    pure.n = l;
    pure.mode = mode;
    pure.masks = read_mask_list(a.pure, l);
  } else {
    pure = build_pure(l, mode, limits.kernel());
  }
  std::cerr << "Pure(" << l << ") has " << pure.masks.size() << " members (" << sw.seconds() << " s)\n";

  std::vector<Shard> todo;
  int layout = a.shards;
  if (!a.shard.empty()) {
    Shard s = parse_shard(a.shard);
    layout = s.count;
    todo.push_back(s);
  } else {
    for (int i = 0; i < a.shards; ++i) todo.push_back({i, a.shards, 4});
  }
  auto ckpt_path = [&](const Shard& s) { return dir / ("checkpoint-" + shard_tag(s) + ".jsonl"); };

  for (const Shard& s : todo) {
    RunOptions opt;
    opt.shard = s;
    opt.extend.prune = !a.no_prune;
    opt.extend.split_prune = a.split_prune;
    opt.kernel = limits.kernel();
    opt.max_units = a.max_units;
    if (!a.resume.empty()) opt.resume = read_checkpoint(ckpt_path(s), l);
    JsonlWriter writer(ckpt_path(s), !a.resume.empty());
    // resumed records are kept in the file; new ones are appended
    std::size_t done = opt.resume.size();
    opt.on_unit = [&](const UnitResult& u) {
      writer.write(unit_to_json(u, l));
      if (++done % 10000 == 0) std::cerr << "  shard " << shard_tag(s) << ": " << done << " complexes\n";
    };
    GroupSetResult r = run_algorithm1(pure, mode, opt);
    std::cerr << "shard " << shard_tag(s) << ": " << r.units_done << "/" << r.units_total << " complexes, "
              << r.stats.cases << " cases (" << sw.seconds() << " s)\n";
  }

  // merge every checkpoint of this shard layout
  GroupSetResult all;
  all.n = a.n;
  all.mode = mode;
  all.units_total = pure.masks.size();
  std::vector<std::pair<int, int>> complete_shards;
  for (int i = 0; i < layout; ++i) {
    const Shard s{i, layout, 4};
    if (!fs::exists(ckpt_path(s))) continue;
    std::set<std::size_t> seen;
    std::size_t owned = 0;
    for (std::size_t k = static_cast<std::size_t>(i); k < pure.masks.size(); k += static_cast<std::size_t>(layout))
      ++owned;
    for (const auto& u : read_checkpoint(ckpt_path(s), l))
      if (seen.insert(u.index).second) all.merge(u);
    if (seen.size() == owned) complete_shards.emplace_back(i + 1, layout);
  }
  {
    std::ofstream g(dir / "groups.json");
    g << group_set_to_json(all, complete_shards).dump(2) << '\n';
    JsonlWriter unk(dir / "unrecognized.jsonl", false);
    for (const auto& u : all.unknowns) unk.write(unknown_to_json(u, std::to_string(u.parent_index % static_cast<std::size_t>(layout) + 1) + "/" + std::to_string(layout)));
  }

  std::cout << "n=" << a.n << " mode=" << a.mode << (all.complete() ? "" : " PARTIAL") << '\n';
  std::cout << "groups:";
  for (const auto& [base, w] : all.groups) std::cout << ' ' << base.name();
  std::cout << "\ncomplexes: " << all.stats.complexes << "\ncases: " << all.stats.cases
            << "\npruned: " << all.stats.pruned << "\nsplit-skipped: " << all.stats.split_skipped
            << "\nunrecognized: " << all.stats.unknowns << "\nseconds: " << sw.seconds() << '\n';
  return 0;
}

int cmd_classify(int n, const std::string& shard_spec, const std::string& out, const Limits& limits) {
  const Shard shard = parse_shard(shard_spec);
  Stopwatch sw;
  const Classification c = classify_complexes(n, shard, limits.kernel());
  const Distribution d = distribution(c);
  const fs::path dir(out);
  fs::create_directories(dir);
  const std::string name = shard.count == 1 ? "distribution.csv" : "distribution-" + shard_tag(shard) + ".csv";
  {
    std::ofstream f(dir / name);
    write_distribution_csv(f, n, d);
  }
  {
    JsonlWriter unk(dir / "unrecognized.jsonl", false);
    for (std::size_t i = 0; i < c.masks.size(); ++i) {
      const GroupId& g = c.group_of(i);
      if (!g.unknown()) continue;
      json j{{"complex", complex_to_json(mask_complex(n, c.masks[i]))},
             {"provenance", {{"shard", shard_tag(shard)}, {"position", i}}}};
      if (g.fingerprint) j["fingerprint"] = fingerprint_to_json(*g.fingerprint);
      Pi1Kernel kernel(limits.kernel());
      kernel.load(n, c.masks[i]);
      kernel.pi1();
      j["presentation"] = presentation_to_json(kernel.last_presentation());
      unk.write(j);
    }
  }
  write_distribution_csv(std::cout, n, d);
  std::cerr << c.masks.size() << " complexes in " << sw.seconds() << " s\n";
  return 0;
}

int cmd_verify(const std::string& file, const std::string& expect, const Limits& limits) {
  const Complex k = read_complex_file(file);
  const GroupId g = fundamental_group(k, limits.recognize());
  std::cout << "vertices: " << k.vertex_count() << "\nfacets: " << k.facets().size() << "\ngroup: " << g.name() << '\n';
  const Presentation p = tietze_simplify(edge_path_presentation(k), limits.tietze_budget);
  std::cout << "presentation: " << presentation_to_json(p).dump() << '\n';
  if (!g.unknown() && (g.base.kind == BaseKind::Cyclic || g.base.kind == BaseKind::D6 || g.base.kind == BaseKind::Q8) &&
      g.free_rank == 0)
    if (auto order = todd_coxeter(p, limits.coset_limit)) std::cout << "order: " << *order << '\n';
  if (g.unknown() && g.fingerprint && g.fingerprint->hom_counts.empty()) {
    std::cout << "resource cap exceeded while counting homomorphisms\n";
    return kExitResource;
  }
  if (expect.empty()) return 0;
  const GroupId want = GroupId::parse(expect);
  if (g == want) {
    std::cout << "OK\n";
    return 0;
  }
  std::cout << "MISMATCH: expected " << want.name() << '\n';
  return kExitMismatch;
}

int cmd_report(const std::string& dir, bool check) {
  const ReportResult r = make_report(dir);
  std::cout << r.text;
  if (check && !r.mismatches.empty()) return kExitMismatch;
  return 0;
}

int cmd_group(const std::string& file, const Limits& limits) {
  const Complex k = read_complex_file(file);
  const Presentation raw = edge_path_presentation(k);
  const Presentation p = tietze_simplify(raw, limits.tietze_budget);
  const GroupId g = recognize(p, limits.recognize());
  json j{{"complex", complex_to_json(k)},
         {"h1", homology_h1(k).to_string()},
         {"presentation", presentation_to_json(raw)},
         {"simplified", presentation_to_json(p)},
         {"group", group_to_json(g)}};
  if (!g.fingerprint) j["fingerprint"] = fingerprint_to_json(fingerprint(p, limits.hom_cap));
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pi1scan: enumerate small simplicial complexes and classify their fundamental groups"};
  app.require_subcommand(1);
  Limits limits;
  int rc = 0;

  std::string kind;
  int count_n = 0;
  auto* count = app.add_subcommand("count", "Counting formulas and published sequences");
  count->add_option("kind", kind, "dedekind | reduced_dedekind | h3")->required();
  count->add_option("n", count_n, "Number of vertices")->required();
  count->callback([&] { rc = cmd_count(kind, count_n); });

  EnumerateArgs ea;
  auto* en = app.add_subcommand("enumerate", "Isomorphism-free 2-pure complexes (3-uniform hypergraphs)");
  en->add_option("--n", ea.n, "Number of vertices (3..8)")->required();
  en->add_option("--filter", ea.filter, "all | connected | spanning-connected");
  en->add_option("--shard", ea.shard, "Shard i/m");
  en->add_option("--format", ea.format, "text | json | hex")->check(CLI::IsMember({"text", "json", "hex"}));
  en->add_option("--out", ea.out, "Output file (default stdout)");
  en->add_option("--checkpoint", ea.checkpoint, "JSONL progress file");
  en->add_option("--every", ea.every, "Checkpoint interval")->check(CLI::PositiveNumber);
  en->add_flag("--resume", ea.resume, "Continue after the last checkpoint");
  en->add_flag("--count", ea.count_only, "Only count (parallel)");
  limits.add_to(en);
  en->callback([&] {
    limits.apply();
    rc = cmd_enumerate(ea);
  });

  int pure_n = 0;
  std::string pure_mode = "nontrivial", pure_out;
  auto* pure = app.add_subcommand("pure", "Complexes with nontrivial (non-cyclic) fundamental group");
  pure->add_option("--n", pure_n, "Number of vertices (3..7)")->required();
  pure->add_option("--mode", pure_mode, "nontrivial | noncyclic");
  pure->add_option("--out", pure_out, "Write the complexes, one per line");
  limits.add_to(pure);
  pure->callback([&] {
    limits.apply();
    rc = cmd_pure(pure_n, pure_mode, pure_out, limits);
  });

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Cone-extension search for all groups on n vertices");
  run->add_option("--n", ra.n, "Number of vertices (4..8)")->required();
  run->add_option("--mode", ra.mode, "nontrivial | noncyclic");
  auto* shard_opt = run->add_option("--shard", ra.shard, "Run only shard i/m");
  run->add_option("--shards", ra.shards, "Split into m shards, all run here")->check(CLI::PositiveNumber)->excludes(shard_opt);
  run->add_option("--out", ra.out, "Output directory");
  run->add_option("--resume", ra.resume, "Directory of an interrupted run");
  run->add_option("--pure", ra.pure, "Pure(n-1) file written by `pure --out`");
  run->add_flag("--split-prune", ra.split_prune, "Skip 8-vertex cones caught by the 4+4 split test");
  run->add_flag("--no-prune", ra.no_prune, "Evaluate every extension");
  run->add_option("--max-units", ra.max_units, "Stop after this many complexes (for testing resume)");
  limits.add_to(run);
  run->callback([&] {
    limits.apply();
    rc = cmd_run(ra, limits);
  });

  int cl_n = 0;
  std::string cl_shard = "1/1", cl_out = ".";
  auto* cl = app.add_subcommand("classify", "Distribution of groups over all complexes on n vertices");
  cl->add_option("--n", cl_n, "Number of vertices (3..7)")->required();
  cl->add_option("--shard", cl_shard, "Shard i/m");
  cl->add_option("--out", cl_out, "Output directory");
  limits.add_to(cl);
  cl->callback([&] {
    limits.apply();
    rc = cmd_classify(cl_n, cl_shard, cl_out, limits);
  });

  std::string vf_file, vf_expect;
  auto* vf = app.add_subcommand("verify", "Recognize the group of a complex");
  vf->add_option("--file", vf_file, "Complex (text or JSON)")->required()->check(CLI::ExistingFile);
  vf->add_option("--expect", vf_expect, "Expected group, e.g. B3 or Cyclic(2)*F1");
  limits.add_to(vf);
  vf->callback([&] { rc = cmd_verify(vf_file, vf_expect, limits); });

  std::string gr_file;
  auto* gr = app.add_subcommand("group", "Presentation, homology and fingerprint of a complex");
  gr->add_option("--file", gr_file, "Complex (text or JSON)")->required()->check(CLI::ExistingFile);
  limits.add_to(gr);
  gr->callback([&] { rc = cmd_group(gr_file, limits); });

  std::string rp_dir;
  bool rp_check = false;
  auto* rp = app.add_subcommand("report", "Tables from run artifacts");
  rp->add_option("dir", rp_dir, "Results directory")->required();
  rp->add_flag("--check", rp_check, "Exit with 2 when the tables differ from published values");
  rp->callback([&] { rc = cmd_report(rp_dir, rp_check); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ResourceCapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}
