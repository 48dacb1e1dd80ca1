// freecut command line tool.
//
// Exit codes: 0 success, 2 input error, 3 search budget exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "freecut/freecut.hpp"

namespace {

using freecut::Error;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitTruncated = 3;

struct Common {
  unsigned rank = 2;
  unsigned threads = 1;
  std::string output;
};

struct PatternSource {
  std::string file;
  std::vector<std::string> words;

  void add_to(CLI::App* cmd) {
    cmd->add_option("-p,--pattern", file, "pattern file, one word per line");
    cmd->add_option("-w,--words", words, "pattern words given inline")->delimiter(',');
  }

  freecut::LinePattern load(unsigned rank) const {
    if (file.empty() == words.empty()) throw Error("give exactly one of --pattern and --words");
    std::vector<freecut::Word> raw;
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw Error("cannot read " + file);
      raw = freecut::parse_pattern_words(in, rank);
    } else {
      for (const std::string& w : words) raw.push_back(freecut::Word::parse(w, rank));
    }
    raw.erase(std::remove_if(raw.begin(), raw.end(), [](const freecut::Word& w) { return w.empty(); }), raw.end());
    if (raw.empty()) throw Error("empty pattern");
    return freecut::induced_pattern(raw, rank);
  }
};

json pattern_json(const freecut::LinePattern& p) {
  json a = json::array();
  for (const auto& pw : p.words()) a.push_back(pw.word.to_string());
  return a;
}

std::string text_header(const std::string& tag, const json& config, const char* comment = "#") {
  return std::string(comment) + " freecut-" + tag + "/1\n" + comment + " config: " + config.dump() + "\n";
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw Error("cannot write " + c.output);
  out << text;
}

std::string format_choice(const std::string& format, bool as_json, bool as_dot) {
  if (as_json && as_dot) throw Error("--json and --dot are exclusive");
  if (as_json) return "json";
  if (as_dot) return "dot";
  return format;
}

// ---------------------------------------------------------------------------

unsigned fullness(const freecut::CyclicWord& w, unsigned rank) {
  unsigned k = 0;
  while (freecut::count_reduced_words(rank, k + 1) <= w.size() && freecut::is_k_full(w, k + 1, rank)) ++k;
  return k;
}

std::string certificate_text(const freecut::Certificate& c) {
  std::ostringstream s;
  s << "has_4_full_word=" << (c.has_4_full_word ? "true" : "false") << " min_multiplicity=" << c.min_multiplicity
    << " lower_bound=" << (c.certified_lower_bound ? std::to_string(*c.certified_lower_bound) : "none");
  return s.str();
}

std::string label(const freecut::ComponentId& v) { return std::string(1, v.letter.to_char()); }

int cmd_analyze(const Common& c, const PatternSource& src, const std::string& format) {
  const freecut::LinePattern p = src.load(c.rank);
  const json config = {{"command", "analyze"}, {"rank", c.rank}, {"pattern", pattern_json(p)},
                       {"format", format}, {"seed", nullptr}};
  const freecut::WhiteheadGraph g = freecut::wh_vertex(p);
  if (format == "dot") {
    emit(c, text_header("analyze", config, "//") + freecut::to_dot(p, g));
    return kExitOk;
  }
  std::vector<std::size_t> per_word(p.size(), 0);
  for (const auto& e : g.edges()) ++per_word[e.line.word_id];
  const auto m = freecut::multiplicity_matrix(g);
  const auto cuts = freecut::cut_vertices(g);
  const bool connected = freecut::components(g).count == 1;
  const std::size_t lambda = freecut::edge_connectivity(g);
  const freecut::Certificate cert = freecut::certify_lower_bound(p);

  if (format == "json") {
    ojson j;
    j["format"] = "freecut-analyze/1";
    j["config"] = config;
    auto& ws = j["words"] = ojson::array();
    for (const auto& pw : p.words()) {
      ws.push_back({{"id", pw.id}, {"word", pw.word.to_string()}, {"length", pw.word.size()},
                    {"lines_at_base", per_word[pw.id]}, {"fullness", fullness(pw.word, c.rank)}});
    }
    j["vertices"] = g.vertices().size();
    j["edges"] = g.edges().size();
    auto& ps = j["pairs"] = ojson::array();
    for (std::size_t a = 0; a < m.size(); ++a) {
      for (std::size_t b = a + 1; b < m.size(); ++b) {
        ps.push_back({{"u", label(g.vertices()[a])}, {"v", label(g.vertices()[b])}, {"multiplicity", m[a][b]}});
      }
    }
    j["whitehead"] = freecut::to_json(p, g);
    j["connected"] = connected;
    auto& cv = j["cut_vertices"] = ojson::array();
    for (const auto& v : cuts) cv.push_back(label(v));
    j["edge_connectivity"] = lambda;
    j["certificate"] = freecut::to_json(p, cert);
    emit(c, j.dump(2) + "\n");
    return kExitOk;
  }

  std::ostringstream out;
  out << text_header("analyze", config);
  out << "words: " << p.size() << "\n";
  for (const auto& pw : p.words()) {
    out << "word " << pw.id << ": " << pw.word.to_string() << " length=" << pw.word.size()
        << " lines_at_base=" << per_word[pw.id] << " fullness=" << fullness(pw.word, c.rank) << "\n";
  }
  out << "vertices: " << g.vertices().size() << "\n";
  out << "edges: " << g.edges().size() << "\n";
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = a + 1; b < m.size(); ++b) {
      out << "pair " << label(g.vertices()[a]) << " " << label(g.vertices()[b]) << ": " << m[a][b] << "\n";
    }
  }
  for (const auto& e : g.edges()) {
    out << "edge " << label(e.a) << " " << label(e.b) << " line=" << freecut::line_to_string(p, e.line) << "\n";
  }
  out << "connected: " << (connected ? "true" : "false") << "\n";
  out << "cut_vertices:";
  if (cuts.empty()) out << " none";
  for (const auto& v : cuts) out << " " << label(v);
  out << "\n";
  out << "edge_connectivity: " << lambda << "\n";
  out << "certificate: " << certificate_text(cert) << "\n";
  emit(c, out.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct CutsearchArgs {
  std::size_t max_size = 2;
  unsigned radius = 2;
  std::uint64_t max_candidates = freecut::CutSearchOptions{}.max_candidates;
  bool exact = false;
};

int cmd_cutsearch(const Common& c, const PatternSource& src, const CutsearchArgs& a, const std::string& format) {
  const freecut::LinePattern p = src.load(c.rank);
  freecut::CutSearchOptions opt;
  opt.max_size = a.max_size;
  opt.radius = a.radius;
  opt.max_candidates = a.max_candidates;
  opt.threads = c.threads;
  opt.fast = !a.exact;
  const json config = {{"command", "cutsearch"}, {"rank", c.rank}, {"pattern", pattern_json(p)},
                       {"format", format}, {"max_size", a.max_size}, {"radius", a.radius},
                       {"max_candidates", a.max_candidates}, {"exact", a.exact}, {"seed", nullptr}};
  const freecut::CutSearchResult r = freecut::find_cut_sets(p, opt);
  const freecut::Certificate cert = freecut::certify_lower_bound(p);
  const int code = r.truncated ? kExitTruncated : kExitOk;

  if (format == "json") {
    ojson j;
    j["format"] = "freecut-cutsearch/1";
    j["config"] = config;
    j["lines_considered"] = r.lines_considered;
    j["candidates"] = r.candidates;
    j["settled_by_bound"] = r.settled_by_bound;
    j["edge_sets"] = r.edge_sets;
    j["truncated"] = r.truncated;
    j["certificate"] = freecut::to_json(p, cert);
    auto& rs = j["cut_sets"] = ojson::array();
    for (const auto& rep : r.reports) rs.push_back(ojson(freecut::to_json(p, rep)));
    emit(c, j.dump(2) + "\n");
    return code;
  }
  if (format == "dot") {
    std::ostringstream out;
    out << text_header("cutsearch", config, "//");
    for (std::size_t i = 0; i < r.reports.size(); ++i) {
      const auto& rep = r.reports[i];
      const auto g = freecut::remove_lines(freecut::wh_subtree(p, rep.pruned_core.subtree), rep.lines);
      out << "// cut set " << i << ":";
      for (const auto& l : rep.lines) out << " " << freecut::line_to_string(p, l);
      out << "\n" << freecut::to_dot(p, g);
    }
    emit(c, out.str());
    return code;
  }
  std::ostringstream out;
  out << text_header("cutsearch", config);
  out << "lines_considered: " << r.lines_considered << "\n";
  out << "candidates: " << r.candidates << "\n";
  out << "settled_by_bound: " << r.settled_by_bound << "\n";
  out << "edge_sets: " << r.edge_sets << "\n";
  out << "truncated: " << (r.truncated ? "true" : "false") << "\n";
  out << "certificate: " << certificate_text(cert) << "\n";
  out << "cut_sets: " << r.reports.size() << "\n";
  for (const auto& rep : r.reports) {
    out << "set size=" << rep.lines.size() << " lines=";
    for (std::size_t i = 0; i < rep.lines.size(); ++i) {
      out << (i ? "," : "") << freecut::line_to_string(p, rep.lines[i]);
    }
    out << " core=" << freecut::to_string(rep.pruned_core.kind);
    if (rep.pruned_core.retained_edge) out << "[" << rep.pruned_core.retained_edge->to_string() << "]";
    out << " components=" << freecut::count_to_string(rep.component_count)
        << " minimal=" << (rep.minimal ? (*rep.minimal ? "true" : "false") : "untested") << "\n";
  }
  emit(c, out.str());
  return code;
}

// ---------------------------------------------------------------------------

int cmd_boundary(const Common& c, const PatternSource& src, const std::vector<std::string>& points,
                 std::optional<std::size_t> depth, const std::string& format) {
  const freecut::LinePattern p = src.load(c.rank);
  std::vector<freecut::BoundaryPoint> pts;
  for (const std::string& s : points) pts.push_back(freecut::parse_boundary_point(p, s));
  const std::size_t d = depth ? *depth : freecut::default_boundary_depth(p, pts);
  const json config = {{"command", "boundary"}, {"rank", c.rank}, {"pattern", pattern_json(p)}, {"format", format},
                       {"points", points}, {"depth", d}, {"seed", nullptr}};
  const freecut::BoundaryCheck b = freecut::boundary_cut_check(p, pts, d);
  if (format == "json") {
    ojson j;
    j["format"] = "freecut-boundary/1";
    j["config"] = config;
    j["result"] = freecut::to_json(p, b);
    emit(c, j.dump(2) + "\n");
    return kExitOk;
  }
  std::ostringstream out;
  out << text_header("boundary", config);
  out << "good_points:";
  for (const auto& l : b.lines) out << " " << freecut::line_to_string(p, l);
  out << "\ndepth: " << b.depth << "\n";
  out << "components: " << b.component_count << "\n";
  out << "components_next: " << b.next_count << "\n";
  out << "stabilized: " << (b.stabilized ? "true" : "false") << "\n";
  emit(c, out.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

std::vector<unsigned> parse_grid(const std::string& text) {
  std::vector<unsigned> out;
  auto num = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw Error("bad n grid: " + text);
    return static_cast<unsigned>(std::stoul(s));
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() < 2 || parts.size() > 3) throw Error("bad n grid: " + text);
    const unsigned lo = num(parts[0]), hi = num(parts[1]);
    const unsigned step = parts.size() == 3 ? num(parts[2]) : 1;
    if (step == 0 || lo > hi) throw Error("bad n grid: " + text);
    for (unsigned n = lo; n <= hi; n += step) out.push_back(n);
  } else {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(num(part));
  }
  if (out.empty()) throw Error("empty n grid");
  return out;
}

struct GenericArgs {
  std::vector<std::string> specs;
  std::string grid;
  std::uint64_t samples = 100000;
  std::optional<std::uint64_t> seed;
  unsigned exact_below = 0;
  std::uint64_t cap = freecut::kDefaultEnumerationCap;
  bool fit = false;
};

int cmd_generic(const Common& c, const GenericArgs& a) {
  std::vector<freecut::PropertySpec> specs;
  for (const std::string& s : a.specs) specs.push_back(freecut::PropertySpec::parse(s, c.rank));
  const std::vector<unsigned> grid = parse_grid(a.grid);
  bool needs_seed = false;
  for (unsigned n : grid) needs_seed |= n >= a.exact_below;
  if (needs_seed && !a.seed) throw Error("sampling needs --seed");
  if (a.samples < 1) throw Error("--samples must be at least 1");
  freecut::check_rank(c.rank);
  json spec_names = json::array();
  for (const auto& s : specs) spec_names.push_back(s.to_string());
  const json config = {{"command", "generic"}, {"rank", c.rank}, {"specs", spec_names}, {"n_grid", grid},
                       {"samples", a.samples}, {"seed", a.seed ? json(*a.seed) : json(nullptr)},
                       {"exact_below", a.exact_below}, {"cap", a.cap}};
  std::ostringstream out;
  out << text_header("generic", config) << freecut::kEstimateCsvHeader << "\n";
  std::vector<std::string> fits;
  std::uint64_t row_index = 0;
  for (const auto& s : specs) {
    std::vector<freecut::EstimateRow> rows;
    for (unsigned n : grid) {
      freecut::EstimateRow row =
          n < a.exact_below ? freecut::exact_fraction(s, c.rank, n, a.cap, c.threads)
                            : freecut::mc_fraction(s, c.rank, n, a.samples, *a.seed + row_index, c.threads);
      ++row_index;
      out << freecut::to_csv_row(row) << "\n";
      rows.push_back(std::move(row));
    }
    if (a.fit) {
      std::ostringstream f;
      f << "# fit " << s.to_string() << ": ";
      try {
        const freecut::DecayFit fit = freecut::decay_fit(rows);
        f << "b=" << fit.b << " c=" << fit.c << " r2=" << fit.r2 << " rows=" << fit.used;
      } catch (const Error& e) {
        f << "unavailable (" << e.what() << ")";
      }
      fits.push_back(f.str());
    }
  }
  for (const std::string& f : fits) out << f << "\n";
  emit(c, out.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_enumerate(const Common& c, const std::string& grid_text, std::uint64_t cap, bool list,
                  const std::string& format) {
  freecut::check_rank(c.rank);
  const std::vector<unsigned> grid = parse_grid(grid_text);
  for (unsigned n : grid) freecut::check_enumeration_cap(c.rank, n, cap);
  const json config = {{"command", "enumerate"}, {"rank", c.rank}, {"n_grid", grid}, {"cap", cap},
                       {"list", list}, {"format", format}, {"seed", nullptr}};
  json rows = json::array();
  std::ostringstream listing;
  bool all_match = true;
  for (unsigned n : grid) {
    // reduced, cyclically reduced, and core-length histogram per first letter
    const unsigned parts = n == 0 ? 1 : 2 * c.rank;
    std::vector<std::vector<std::uint64_t>> hist(parts, std::vector<std::uint64_t>(n + 1, 0));
    std::vector<std::uint64_t> cyclic(parts, 0);
    std::vector<std::vector<std::string>> words(parts);
    freecut::parallel_for(parts, c.threads, [&](std::size_t i) {
      std::optional<freecut::Letter> first;
      if (n > 0) first = freecut::Letter::from_code(static_cast<unsigned>(i));
      freecut::ReducedWordEnumerator it(c.rank, n, cap, first);
      freecut::Word w;
      while (it.next(w)) {
        const std::size_t k = freecut::cyclic_reduce(w).core.size();
        ++hist[i][k];
        if (k == n) ++cyclic[i];
        if (list) words[i].push_back(w.to_string());
      }
    });
    std::uint64_t total = 0, cyc = 0;
    std::vector<std::uint64_t> by_core(n + 1, 0);
    for (unsigned i = 0; i < parts; ++i) {
      cyc += cyclic[i];
      for (unsigned k = 0; k <= n; ++k) by_core[k] += hist[i][k];
      for (const std::string& s : words[i]) listing << s << "\n";
    }
    for (std::uint64_t x : by_core) total += x;
    const freecut::BigInt f_total = freecut::count_reduced_words(c.rank, n);
    const freecut::BigInt f_cyc = n == 0 ? freecut::BigInt(1) : freecut::count_cyclically_reduced(c.rank, n);
    json row = {{"n", n},
                {"reduced", total},
                {"reduced_formula", f_total.str()},
                {"cyclically_reduced", cyc},
                {"cyclically_reduced_formula", f_cyc.str()}};
    bool match = f_total == total && f_cyc == cyc;
    json cores = json::array();
    for (unsigned k = 1; k < n; ++k) {
      const freecut::BigInt f = freecut::count_cyclically_reduced(c.rank, k) *
                                freecut::count_with_cyclic_reduction(c.rank, n, k);
      cores.push_back({{"k", k}, {"count", by_core[k]}, {"formula", f.str()}});
      match = match && f == by_core[k];
    }
    row["by_core_length"] = cores;
    row["match"] = match;
    all_match = all_match && match;
    rows.push_back(row);
  }
  if (format == "json") {
    ojson j;
    j["format"] = "freecut-enumerate/1";
    j["config"] = config;
    j["rows"] = rows;
    j["all_match"] = all_match;
    emit(c, j.dump(2) + "\n");
    return kExitOk;
  }
  std::ostringstream out;
  out << text_header("enumerate", config);
  out << "n,reduced,reduced_formula,cyclically_reduced,cyclically_reduced_formula,core_lengths_match\n";
  for (const json& r : rows) {
    out << r["n"].get<unsigned>() << "," << r["reduced"].get<std::uint64_t>() << ","
        << r["reduced_formula"].get<std::string>() << "," << r["cyclically_reduced"].get<std::uint64_t>() << ","
        << r["cyclically_reduced_formula"].get<std::string>() << "," << (r["match"].get<bool>() ? "true" : "false")
        << "\n";
  }
  if (list) out << "# words\n" << listing.str();
  emit(c, out.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_sample(const Common& c, unsigned n, std::size_t count, std::optional<std::uint64_t> seed,
               const std::string& model) {
  if (!seed) throw Error("sample needs --seed");
  const freecut::WordModel m = model == "sphere" ? freecut::WordModel::kSphere : freecut::WordModel::kBall;
  const freecut::LinePattern p = freecut::random_peripheral_structure(c.rank, n, count, *seed, m);
  const json config = {{"command", "sample"}, {"rank", c.rank}, {"n", n}, {"count", count},
                       {"seed", *seed}, {"model", model}};
  std::ostringstream out;
  out << text_header("pattern", config);
  for (const auto& pw : p.words()) out << pw.word.to_string() << "\n";
  emit(c, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cut sets in boundaries of free groups relative to line patterns"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("-r,--rank", common.rank, "rank of the free group")->check(CLI::Range(1U, freecut::kMaxRank));
  app.add_option("-t,--threads", common.threads, "worker threads (0: all cores); output does not depend on it");
  app.add_option("-o,--output", common.output, "write to this file instead of stdout");

  PatternSource src;
  std::string format = "text";
  bool as_json = false, as_dot = false;

  auto* analyze = app.add_subcommand("analyze", "Whitehead graph at the identity and the connectivity certificate");
  src.add_to(analyze);
  analyze->add_option("-f,--format", format)->check(CLI::IsMember({"text", "json", "dot"}));
  analyze->add_flag("--json", as_json);
  analyze->add_flag("--dot", as_dot);

  CutsearchArgs cs;
  auto* cutsearch = app.add_subcommand("cutsearch", "search for small cut sets of good points");
  src.add_to(cutsearch);
  cutsearch->add_option("--max-size", cs.max_size)->check(CLI::Range(std::size_t{1}, freecut::kMaxSearchSize));
  cutsearch->add_option("--radius", cs.radius)->check(CLI::Range(0U, freecut::kMaxSearchRadius));
  cutsearch->add_option("--max-candidates", cs.max_candidates);
  cutsearch->add_flag("--exact", cs.exact, "evaluate every candidate exactly");
  cutsearch->add_option("-f,--format", format)->check(CLI::IsMember({"text", "json", "dot"}));
  cutsearch->add_flag("--json", as_json);
  cutsearch->add_flag("--dot", as_dot);

  std::vector<std::string> points;
  std::optional<std::size_t> depth;
  auto* boundary = app.add_subcommand("boundary", "count components after removing boundary points");
  src.add_to(boundary);
  boundary->add_option("--point", points, "line id:base:direction or ray prefix(period)")->required();
  boundary->add_option("--depth", depth);
  boundary->add_option("-f,--format", format)->check(CLI::IsMember({"text", "json"}));
  boundary->add_flag("--json", as_json);

  GenericArgs ga;
  auto* generic = app.add_subcommand("generic", "densities of word properties (CSV)");
  generic->add_option("--spec", ga.specs, "S, N, W(t), L(k), Q(eps), B(k), FULL(m), H(k)")->required();
  generic->add_option("--n-grid", ga.grid, "lo:hi[:step] or a comma list")->required();
  generic->add_option("--samples", ga.samples);
  generic->add_option("--seed", ga.seed);
  generic->add_option("--exact-below", ga.exact_below, "enumerate exactly when n is below this");
  generic->add_option("--cap", ga.cap, "enumeration size limit");
  generic->add_flag("--fit", ga.fit, "append exponential decay fits");

  std::string enum_grid;
  std::uint64_t enum_cap = 10'000'000;
  bool list = false;
  auto* enumerate = app.add_subcommand("enumerate", "enumeration counts against closed formulas");
  enumerate->add_option("--n-grid", enum_grid, "lo:hi[:step] or a comma list")->required();
  enumerate->add_option("--cap", enum_cap);
  enumerate->add_flag("--list", list, "also print the words");
  enumerate->add_option("-f,--format", format)->check(CLI::IsMember({"text", "json"}));
  enumerate->add_flag("--json", as_json);

  unsigned sample_n = 0;
  std::size_t sample_count = 1;
  std::optional<std::uint64_t> sample_seed;
  std::string model = "ball";
  auto* sample = app.add_subcommand("sample", "random peripheral structure as a pattern file");
  sample->add_option("-n,--n", sample_n, "maximum word length")->required();
  sample->add_option("--count", sample_count);
  sample->add_option("--seed", sample_seed);
  sample->add_option("--model", model)->check(CLI::IsMember({"ball", "sphere"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const std::string fmt = format_choice(format, as_json, as_dot);
    if (*analyze) return cmd_analyze(common, src, fmt);
    if (*cutsearch) return cmd_cutsearch(common, src, cs, fmt);
    if (*boundary) return cmd_boundary(common, src, points, depth, fmt);
    if (*generic) return cmd_generic(common, ga);
    if (*enumerate) return cmd_enumerate(common, enum_grid, enum_cap, list, fmt);
    if (*sample) return cmd_sample(common, sample_n, sample_count, sample_seed, model);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
