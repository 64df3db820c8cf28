#include <cstdio>
#include <filesystem>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "report.hpp"

using namespace hfk;

namespace {

enum Exit { kOk = 0, kParse = 1, kIntegrity = 2, kMismatch = 3 };

struct Common {
  std::string ring = "f2";
  bool no_interleave = false;
  int threads = 0;
};

PipelineOptions options(const Common& c) {
  PipelineOptions opt;
  opt.ring = Ring::parse(c.ring);
  opt.interleaved = !c.no_interleave;
  opt.threads = c.threads > 0 ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  return opt;
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

Diagram load(const std::string& path) {
  Diagram d = load_diagram(path);
  if (d.name.empty()) d.name = stem(path);
  return d;
}

// Runs f and maps library errors to exit codes.
template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const DiagramError& e) {
    std::cerr << "invalid diagram: " << e.what() << "\n";
    return kParse;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity failure: " << e.what() << "\n";
    return kIntegrity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
}

int cmd_compute(const std::string& file, const Common& c, bool json, bool dump, bool stats, bool timings) {
  Diagram d = load(file);
  PipelineOptions opt = options(c);
  opt.dump = dump;
  KnotReport r = compute_report(d, opt);
  if (stats)
    for (auto& s : r.res.stats)
      std::cerr << s.event << ": " << s.generators << " generators, " << s.reduced << " after reduction, "
                << s.arrows << " arrows\n";
  if (json) {
    auto j = report_json(r, timings);
    if (dump) j["intermediate"] = r.res.dumps;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report_text(r);
    if (timings) std::cout << "pipeline_ms: " << r.pipeline_ms << "\nhomology_ms: " << r.homology_ms << "\n";
    if (dump)
      for (auto& s : r.res.dumps) std::cout << s;
  }
  return kOk;
}

int cmd_compare(const std::string& a, const std::string& b, const Common& c) {
  PipelineOptions opt = options(c);
  KnotReport ra = compute_report(load(a), opt), rb = compute_report(load(b), opt);
  Comparison cmp = compare_reports(ra, rb);
  if (cmp.equal) {
    std::cout << "match: " << ra.knot << " and " << rb.knot << " agree over " << opt.ring.name() << "\n";
    return kOk;
  }
  std::cout << "mismatch: " << ra.knot << " vs " << rb.knot << "\n";
  for (auto& s : cmp.differences) std::cout << "  " << s << "\n";
  return kMismatch;
}

// Copy of x with the Delta grading of generator g shifted by one.
DStructure corrupt_grading(const DStructure& x, int g) {
  DStructure y(x.amb, x.ring, x.upwards);
  for (int i = 0; i < x.size(); ++i) {
    DGen d = x.gen(i);
    if (i == g) d.delta2 += 2;
    y.add_gen(d);
  }
  for (int i = 0; i < x.size(); ++i)
    for (auto& [k, v] : x.out(i)) y.add_arrow(i, k.to, k.w, v);
  return y;
}

struct Selftest {
  int failures = 0;
  void check(bool ok, const std::string& what, const std::string& detail = "") {
    std::cout << (ok ? "PASS " : "FAIL ") << what;
    if (!ok && !detail.empty()) std::cout << ": " << detail;
    std::cout << "\n";
    if (!ok) ++failures;
  }
};

int cmd_selftest(const std::string& level, const std::string& corpus, bool inject, int threads) {
  Selftest st;
  bool full = level == "full";
  std::vector<std::string> names = {"unknot", "trefoil", "trefoil_mirror", "figure_eight"};
  if (full) names.insert(names.end(), {"5_1", "5_2", "6_1", "6_2", "6_3", "7_1", "ten_crossing", "trefoil_braid", "trefoil_r2"});
  std::vector<Diagram> ds;
  for (auto& n : names) ds.push_back(load(corpus + "/" + n + ".knot"));
  if (full) {
    ds.push_back(connected_sum(ds[1], ds[1]));
    ds.push_back(connected_sum(ds[1], ds[2]));
  }
  for (const Diagram& d : ds) {
    PipelineOptions f2, z;
    f2.ring = Ring{2};
    z.ring = Ring{0};
    f2.check = z.check = true;
    f2.threads = z.threads = threads;
    KnotReport a, b;
    try {
      a = compute_report(d, f2);
      b = compute_report(d, z);
    } catch (const std::exception& e) {
      st.check(false, d.name + ": pipeline and structure checks", e.what());
      continue;
    }
    st.check(true, d.name + ": curved structure relation after every slice over F2 and Z");
    st.check(a.alexander == b.alexander, d.name + ": Euler characteristic agrees over F2 and Z");
    std::map<std::pair<int, int>, int> qdim;
    for (auto& h : b.hat) qdim[{h.a, h.m}] = h.dim;
    bool uc = true;
    for (auto& h : a.hat) uc = uc && h.dim >= qdim[{h.a, h.m}];
    st.check(uc, d.name + ": F2 dimensions bound the rational ranks");
    st.check(b.nu_p.at(2) == a.nu, d.name + ": nu_2 from Z agrees with nu over F2");
    st.check(a.tau <= a.nu, d.name + ": tau <= nu");
    st.check(a.epsilon >= -2 && a.epsilon <= 2, d.name + ": epsilon in range");
    Comparison sym = verify_symmetry(d, f2);
    st.check(sym.equal, d.name + ": orientation reversal symmetry",
             sym.differences.empty() ? "" : sym.differences.front());
    if (full) {
      for (auto& [what, v] : diagram_variants(d)) {
        Comparison cmp = compare_reports(a, compute_report(v, f2));
        st.check(cmp.equal, d.name + ": invariant under " + what,
                 cmp.differences.empty() ? "" : cmp.differences.front());
      }
    }
  }
  // Fault injection: a corrupted grading must be reported by the structure check.
  PipelineOptions f2;
  f2.ring = Ring{2};
  DStructure x = run_pipeline(orient(ds[1]), f2).last;
  int g = -1;
  for (int i = 0; i < x.size() && g < 0; ++i)
    if (x.alive(i) && !x.out(i).empty()) g = i;
  DStructure bad = corrupt_grading(x, g);
  StructureReport rep = check_structure(bad);
  if (inject) {
    st.check(rep.ok, "injected fault: structure check on a corrupted grading table",
             rep.violations.empty() ? "" : rep.violations.front());
  } else {
    bool named = !rep.ok && rep.violations.front().find("grading law") != std::string::npos;
    st.check(named, "fault injection is detected and names the grading law");
  }
  std::cout << (st.failures ? "selftest failed: " + std::to_string(st.failures) + " checks" : "selftest passed")
            << "\n";
  return st.failures ? kIntegrity : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knot Floer homology calculator for bridge-position diagrams"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "Print version and conventions");

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--ring", common.ring, "Coefficient ring: f2, fp:<p> or z")->capture_default_str();
    sub->add_flag("--no-interleaved-reduction", common.no_interleave, "Reduce only once before the final minimum");
    sub->add_option("--threads", common.threads, "Worker threads (default: available cores)");
  };

  std::string file;
  bool json = false, dump = false, stats = false, timings = false;
  auto* compute = app.add_subcommand("compute", "Compute homology and invariants of a diagram file");
  compute->add_option("file", file, "Diagram file")->required();
  add_common(compute);
  compute->add_flag("--json", json, "Print the JSON result");
  compute->add_flag("--dump-intermediate", dump, "Include every intermediate structure");
  compute->add_flag("--stats", stats, "Print per-slice statistics to stderr");
  compute->add_flag("--timings", timings, "Report wall-clock timings (output is then not deterministic)");

  std::string fa, fb;
  auto* compare = app.add_subcommand("compare", "Compare graded homology and invariants of two diagrams");
  compare->add_option("first", fa, "Diagram file")->required();
  compare->add_option("second", fb, "Diagram file")->required();
  add_common(compare);

  std::string level = "fast";
  std::string corpus = HFK_CORPUS_DIR;
  bool inject = false;
  auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant and property checks");
  selftest->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}))->capture_default_str();
  selftest->add_option("--corpus", corpus, "Corpus directory")->capture_default_str();
  selftest->add_flag("--inject-fault", inject, "Corrupt a grading table before checking it");
  selftest->add_option("--threads", common.threads, "Worker threads");

  CLI11_PARSE(app, argc, argv);

  if (version) {
    std::cout << conventions_text();
    return kOk;
  }
  if (*compute) return guarded([&] { return cmd_compute(file, common, json, dump, stats, timings); });
  if (*compare) return guarded([&] { return cmd_compare(fa, fb, common); });
  if (*selftest) return guarded([&] { return cmd_selftest(level, corpus, inject, std::max(1, common.threads)); });
  std::cout << app.help();
  return kOk;
}
