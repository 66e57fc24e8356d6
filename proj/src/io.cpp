#include "pi1scan/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace pi1scan {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct RawFacet {
  std::vector<int> labels;
  std::string where;  // for messages
};

std::string join(const std::vector<int>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

Complex build(std::vector<RawFacet> raw, std::optional<int> declared_n) {
  if (raw.empty()) throw ParseError("no facets");
  int lo = INT32_MAX, hi = INT32_MIN;
  for (const auto& f : raw) {
    if (f.labels.empty()) throw ParseError(f.where + ": empty facet");
    for (int v : f.labels) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (lo < 0) throw ParseError("negative label " + std::to_string(lo));
  const int n = hi - lo + 1;
  if (n > kMaxVertices) throw ParseError("labels span " + std::to_string(n) + " vertices; at most 16 are supported");
  if (declared_n && *declared_n != n)
    throw ParseError("declared n=" + std::to_string(*declared_n) + " but labels span " + std::to_string(n) +
                     " vertices");
  std::vector<VertexSet> sets;
  std::vector<std::string> first_use(static_cast<std::size_t>(n));
  for (auto& f : raw) {
    VertexSet s = 0;
    for (int& v : f.labels) {
      v -= lo;
      if (s >> v & 1) throw ParseError(f.where + ": repeated label " + std::to_string(v + lo));
      s = static_cast<VertexSet>(s | 1u << v);
      if (first_use[static_cast<std::size_t>(v)].empty()) first_use[static_cast<std::size_t>(v)] = f.where;
    }
    sets.push_back(s);
  }
  for (int v = 0; v < n; ++v)
    if (first_use[static_cast<std::size_t>(v)].empty())
      throw ParseError("label gap: label " + std::to_string(v + lo) + " is unused but labels run from " +
                       std::to_string(lo) + " to " + std::to_string(hi));
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (i == j || (sets[i] & sets[j]) != sets[i]) continue;
      if (sets[i] == sets[j] && i > j) continue;
      std::vector<int> a = raw[i].labels, b = raw[j].labels;
      for (int& v : a) v += lo;
      for (int& v : b) v += lo;
      throw ParseError(raw[i].where + ": facet `" + join(a) + "` contained in `" + join(b) + "` (" + raw[j].where +
                       ")");
    }
  return Complex(n, sets);
}

Complex parse_json_complex(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON at byte ") + std::to_string(e.byte));
  }
  std::optional<int> n;
  json facets;
  if (j.is_object()) {
    if (!j.contains("facets")) throw ParseError("JSON object without \"facets\"");
    facets = j["facets"];
    if (j.contains("n")) {
      if (!j["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
      n = j["n"].get<int>();
    }
  } else {
    facets = j;
  }
  if (!facets.is_array()) throw ParseError("facets must be an array");
  std::vector<RawFacet> raw;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    RawFacet f;
    f.where = "facet " + std::to_string(i + 1);
    if (!facets[i].is_array()) throw ParseError(f.where + ": not an array");
    for (const auto& v : facets[i]) {
      if (!v.is_number_integer()) throw ParseError(f.where + ": non-integer label " + v.dump());
      f.labels.push_back(v.get<int>());
    }
    raw.push_back(std::move(f));
  }
  return build(std::move(raw), n);
}

Complex parse_text_complex(const std::string& text) {
  std::vector<RawFacet> raw;
  std::size_t start = 0;
  int index = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    const std::string part = text.substr(start, end - start);
    RawFacet f;
    f.where = "facet " + std::to_string(++index) + " (column " + std::to_string(start + 1) + ")";
    std::size_t i = 0;
    while (i < part.size()) {
      if (std::isspace(static_cast<unsigned char>(part[i])) || part[i] == ',') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < part.size() && !std::isspace(static_cast<unsigned char>(part[j])) && part[j] != ',') ++j;
      const std::string tok = part.substr(i, j - i);
      if (!std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
          tok.size() > 6)
        throw ParseError(f.where + ", column " + std::to_string(start + i + 1) + ": invalid label '" + tok + "'");
      f.labels.push_back(std::stoi(tok));
      i = j;
    }
    if (f.labels.empty()) {
      if (trim(part).empty() && end == text.size() && index > 1) break;  // trailing ';'
      throw ParseError(f.where + ": empty facet");
    }
    raw.push_back(std::move(f));
    start = end + 1;
  }
  return build(std::move(raw), std::nullopt);
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ParseError("empty input");
  if (t[0] == '{' || t[0] == '[') return parse_json_complex(t);
  return parse_text_complex(t);
}

std::vector<Complex> parse_complexes(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string all = trim(buf.str());
  if (all.empty()) return {};
  if (all[0] == '{' || all[0] == '[') {
    // one JSON document, or JSON lines
    try {
      return {parse_json_complex(all)};
    } catch (const ParseError&) {
      if (all.find('\n') == std::string::npos) throw;
    }
  }
  std::vector<Complex> out;
  std::istringstream lines(all);
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    try {
      out.push_back(parse_complex(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

Complex read_complex_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  auto all = parse_complexes(in);
  if (all.size() != 1)
    throw ParseError(path.string() + ": expected one complex, found " + std::to_string(all.size()));
  return all.front();
}

std::string render_text(const Complex& k) {
  std::string s;
  for (const auto& f : k.facet_lists()) {
    if (!s.empty()) s += ';';
    s += join(f);
  }
  return s;
}

json complex_to_json(const Complex& k) { return json{{"n", k.vertex_count()}, {"facets", k.facet_lists()}}; }

std::string render_json(const Complex& k) { return complex_to_json(k).dump(); }

json presentation_to_json(const Presentation& p) { return json{{"gens", p.gens}, {"relators", p.relators}}; }

Presentation presentation_from_json(const json& j) {
  Presentation p;
  p.gens = j.at("gens").get<int>();
  p.relators = j.at("relators").get<std::vector<Word>>();
  for (const auto& r : p.relators)
    for (int x : r)
      if (x == 0 || std::abs(x) > p.gens) throw ParseError("relator letter " + std::to_string(x) + " out of range");
  return p;
}

namespace {

json big_to_json(const BigInt& b) {
  if (b <= std::numeric_limits<std::uint64_t>::max()) return b.convert_to<std::uint64_t>();
  return b.str();
}

BigInt big_from_json(const json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  return BigInt(j.get<std::uint64_t>());
}

Fingerprint fingerprint_from_json(const json& j) {
  Fingerprint f;
  f.abelian.rank = j.at("abelian").at("rank").get<int>();
  f.abelian.torsion = j.at("abelian").at("torsion").get<std::vector<std::int64_t>>();
  for (const auto& g : battery())
    if (j.at("hom_counts").contains(g.name())) f.hom_counts.push_back(big_from_json(j["hom_counts"][g.name()]));
  return f;
}

std::vector<std::vector<int>> edge_list(std::uint32_t edges) {
  std::vector<std::vector<int>> out;
  for (std::uint32_t m = edges; m; m &= m - 1) {
    auto [a, b] = edge_vertices(std::countr_zero(m));
    out.push_back({a, b});
  }
  return out;
}

std::vector<std::vector<int>> mask_facets(std::uint64_t mask) {
  Witness w;
  w.mask = mask;
  return w.facets();
}

}  // namespace

json fingerprint_to_json(const Fingerprint& f) {
  json homs = json::object();
  const auto& groups = battery();
  for (std::size_t i = 0; i < f.hom_counts.size() && i < groups.size(); ++i)
    homs[groups[i].name()] = big_to_json(f.hom_counts[i]);
  return json{{"abelian", {{"rank", f.abelian.rank}, {"torsion", f.abelian.torsion}}}, {"hom_counts", homs}};
}

json group_to_json(const GroupId& g) {
  json j{{"name", g.name()}, {"base", g.base.name()}, {"free_rank", g.free_rank}};
  if (g.fingerprint) j["fingerprint"] = fingerprint_to_json(*g.fingerprint);
  return j;
}

std::string mask_hex(std::uint64_t mask) {
  std::ostringstream s;
  s << std::hex << mask;
  return s.str();
}

std::uint64_t parse_mask_hex(const std::string& s) {
  std::size_t used = 0;
  const std::uint64_t v = std::stoull(s, &used, 16);
  if (used != s.size()) throw ParseError("bad hex mask '" + s + "'");
  return v;
}

Shard parse_shard(const std::string& s) {
  std::smatch m;
  if (!std::regex_match(s, m, std::regex(R"((\d+)/(\d+))"))) throw ParseError("shard must look like i/m, got '" + s + "'");
  const int i = std::stoi(m[1]), c = std::stoi(m[2]);
  if (c < 1 || i < 1 || i > c) throw ParseError("shard " + s + " needs 1 <= i <= m");
  Shard out;
  out.index = i - 1;
  out.count = c;
  return out;
}

std::string shard_tag(const Shard& s) { return std::to_string(s.index + 1) + "-of-" + std::to_string(s.count); }

// ---------------------------------------------------------------------------
// search artifacts

namespace {

json stats_to_json(const SearchStats& s) {
  return json{{"complexes", s.complexes}, {"cases", s.cases},         {"pruned", s.pruned},
              {"split_skipped", s.split_skipped}, {"unknowns", s.unknowns}};
}

SearchStats stats_from_json(const json& j) {
  SearchStats s;
  s.complexes = j.at("complexes").get<std::uint64_t>();
  s.cases = j.at("cases").get<std::uint64_t>();
  s.pruned = j.at("pruned").get<std::uint64_t>();
  s.split_skipped = j.at("split_skipped").get<std::uint64_t>();
  s.unknowns = j.at("unknowns").get<std::uint64_t>();
  return s;
}

}  // namespace

json unit_to_json(const UnitResult& u, int l_vertices) {
  json groups = json::array();
  for (const auto& [base, w] : u.groups)
    groups.push_back({{"base", base.name()}, {"group", w.group.name()}, {"cone", mask_hex(w.cone_edges)}});
  json unknowns = json::array();
  for (const auto& x : u.unknowns) {
    json r{{"cone", mask_hex(x.cone_edges)}, {"presentation", presentation_to_json(x.presentation)}};
    if (x.fingerprint) r["fingerprint"] = fingerprint_to_json(*x.fingerprint);
    unknowns.push_back(std::move(r));
  }
  return json{{"index", u.index},       {"n", l_vertices},         {"L", mask_hex(u.mask)},
              {"stats", stats_to_json(u.stats)}, {"groups", groups}, {"unknowns", unknowns}};
}

UnitResult unit_from_json(const json& j, int l_vertices) {
  if (j.at("n").get<int>() != l_vertices) throw ParseError("checkpoint record for a different n");
  UnitResult u;
  u.index = j.at("index").get<std::size_t>();
  u.mask = parse_mask_hex(j.at("L").get<std::string>());
  u.stats = stats_from_json(j.at("stats"));
  for (const auto& g : j.at("groups")) {
    Witness w;
    w.group = GroupId::parse(g.at("group").get<std::string>());
    w.parent_index = u.index;
    w.parent_mask = u.mask;
    w.cone_edges = static_cast<std::uint32_t>(parse_mask_hex(g.at("cone").get<std::string>()));
    w.n = l_vertices + 1;
    w.mask = cone_mask(l_vertices, u.mask, w.cone_edges);
    u.groups.emplace(w.group.base, w);
  }
  for (const auto& x : j.at("unknowns")) {
    UnknownCase c;
    c.parent_index = u.index;
    c.parent_mask = u.mask;
    c.cone_edges = static_cast<std::uint32_t>(parse_mask_hex(x.at("cone").get<std::string>()));
    c.n = l_vertices + 1;
    c.mask = cone_mask(l_vertices, u.mask, c.cone_edges);
    c.presentation = presentation_from_json(x.at("presentation"));
    if (x.contains("fingerprint")) c.fingerprint = fingerprint_from_json(x["fingerprint"]);
    u.unknowns.push_back(std::move(c));
  }
  return u;
}

std::vector<UnitResult> read_checkpoint(const std::filesystem::path& path, int l_vertices) {
  std::vector<UnitResult> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      if (in.peek() == EOF) break;  // interrupted final write
      throw ParseError(path.string() + ": corrupt checkpoint record");
    }
    out.push_back(unit_from_json(j, l_vertices));
  }
  return out;
}

JsonlWriter::JsonlWriter(const std::filesystem::path& path, bool append)
    : out_(std::make_unique<std::ofstream>(path, append ? std::ios::app : std::ios::trunc)) {
  if (!*out_) throw std::runtime_error("cannot write " + path.string());
}

void JsonlWriter::write(const json& j) {
  *out_ << j.dump() << '\n';
  out_->flush();
}

json group_set_to_json(const GroupSetResult& r, const std::vector<std::pair<int, int>>& shards_done) {
  json groups = json::array();
  for (const auto& [base, w] : r.groups) {
    groups.push_back({{"base", base.name()},
                      {"witness",
                       {{"group", w.group.name()},
                        {"n", w.n},
                        {"facets", w.facets()},
                        {"parent_index", w.parent_index},
                        {"parent_facets", mask_facets(w.parent_mask)},
                        {"cone_edges", edge_list(w.cone_edges)}}}});
  }
  json shards = json::array();
  for (auto [i, m] : shards_done) shards.push_back(std::to_string(i) + "/" + std::to_string(m));
  return json{{"n", r.n},
              {"mode", to_string(r.mode)},
              {"complete", r.complete()},
              {"units_done", r.units_done},
              {"units_total", r.units_total},
              {"shards", shards},
              {"groups", groups},
              {"stats", stats_to_json(r.stats)},
              {"unrecognized", r.unknowns.size()}};
}

json unknown_to_json(const UnknownCase& u, const std::string& shard) {
  json j{{"complex", {{"n", u.n}, {"facets", mask_facets(u.mask)}}},
         {"presentation", presentation_to_json(u.presentation)},
         {"provenance",
          {{"shard", shard},
           {"parent_index", u.parent_index},
           {"parent_facets", mask_facets(u.parent_mask)},
           {"cone_edges", edge_list(u.cone_edges)}}}};
  if (u.fingerprint) j["fingerprint"] = fingerprint_to_json(*u.fingerprint);
  return j;
}

// ---------------------------------------------------------------------------
// distribution tables

void write_distribution_csv(std::ostream& out, int n, const Distribution& d) {
  out << "n,group,count\n";
  for (const auto& [key, count] : d) out << n << ',' << GroupId{key.first, key.second, std::nullopt}.name() << ',' << count << '\n';
}

DistributionFile read_distribution_csv(std::istream& in) {
  DistributionFile f;
  std::string line;
  if (!std::getline(in, line) || trim(line) != "n,group,count") throw ParseError("distribution file without header");
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty()) continue;
    const auto a = line.find(','), b = line.rfind(',');
    if (a == std::string::npos || a == b) throw ParseError("distribution row " + std::to_string(row) + " is malformed");
    try {
      const int n = std::stoi(line.substr(0, a));
      if (f.n && f.n != n) throw ParseError("mixed n in distribution file");
      f.n = n;
      const GroupId g = GroupId::parse(line.substr(a + 1, b - a - 1));
      f.counts[{g.base, g.free_rank}] += std::stoull(line.substr(b + 1));
    } catch (const std::invalid_argument& e) {
      throw ParseError("distribution row " + std::to_string(row) + ": " + e.what());
    }
  }
  return f;
}

ExpectedDistribution expected_distribution(int n) {
  ExpectedDistribution e;
  if (n == 7) {
    e.rows = {{"Trivial", 5413611}, {"Free(1)", 1264654}, {"Free(2)", 276999}, {"Free(3)", 48944},
              {"Free(4)", 6094},    {"Free(5)", 463},     {"Free(6)", 29},     {"Free(7)", 1},
              {"Free(8)", 1},       {"Cyclic(2)", 350},   {"Cyclic(2)*F1", 31}, {"Cyclic(2)*F2", 3},
              {"ZxZ", 1}};
    e.complete_table = true;
    e.total = 7011181;
  } else if (n == 6) {
    e.rows = {{"Cyclic(2)", 1}};
  }
  return e;
}

namespace {

struct ExpectedGroups {
  int n;
  SearchMode mode;
  std::set<std::string> bases;
};

const std::vector<ExpectedGroups>& expected_groups() {
  static const std::vector<ExpectedGroups> table = {
      {7, SearchMode::Nontrivial, {"Cyclic(2)", "ZxZ"}},
      {8, SearchMode::Noncyclic, {"ZxZ", "Klein", "B3"}},
  };
  return table;
}

}  // namespace

ReportResult make_report(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ParseError(dir.string() + " is not a directory");
  ReportResult result;
  std::ostringstream out;

  // distribution files: distribution.csv or distribution-<i>-of-<m>.csv
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  const std::regex sharded(R"(distribution-(\d+)-of-(\d+)\.csv)");
  std::map<int, std::set<int>> shards;  // m -> present i
  std::optional<int> n;
  Distribution merged;
  bool any = false;
  for (const auto& p : files) {
    const std::string name = p.filename().string();
    std::smatch m;
    int i = 1, c = 1;
    if (std::regex_match(name, m, sharded)) {
      i = std::stoi(m[1]);
      c = std::stoi(m[2]);
    } else if (name != "distribution.csv") {
      continue;
    }
    std::ifstream in(p);
    DistributionFile f;
    try {
      f = read_distribution_csv(in);
    } catch (const ParseError& e) {
      throw ParseError(p.string() + ": " + e.what());
    }
    if (n && f.n && *n != f.n) throw ParseError("distribution files for different n in " + dir.string());
    if (f.n) n = f.n;
    shards[c].insert(i);
    for (const auto& [k, v] : f.counts) merged[k] += v;
    any = true;
  }
  if (shards.size() > 1) throw ParseError("distribution files from different shard layouts in " + dir.string());

  if (any) {
    const int nn = n.value_or(0);
    const int m = shards.begin()->first;
    const auto& present = shards.begin()->second;
    result.partial = static_cast<int>(present.size()) < m;
    out << "# Distribution of fundamental groups, n = " << nn << "\n\n";
    if (result.partial) {
      out << "PARTIAL: shards";
      for (int i : present) out << ' ' << i;
      out << " of " << m << " present\n\n";
    }
    out << "| group | count |\n|---|---:|\n";
    std::uint64_t total = 0, trivial = 0, literal_cyclic = 0;
    for (const auto& [key, count] : merged) {
      const GroupId g{key.first, key.second, std::nullopt};
      out << "| " << g.name() << " | " << count << " |\n";
      total += count;
      if (g.trivial()) trivial += count;
      if (g.cyclic()) literal_cyclic += count;
    }
    out << "| total | " << total << " |\n\n";
    out << "nontrivial: " << total - trivial << "\nnon-cyclic: " << total - literal_cyclic << "\n\n";

    const ExpectedDistribution e = expected_distribution(nn);
    if (!e.rows.empty()) {
      out << "## Check against published values\n\n";
      if (result.partial) {
        out << "skipped: partial data\n";
      } else {
        std::map<std::string, std::uint64_t> got;
        for (const auto& [key, count] : merged) got[GroupId{key.first, key.second, std::nullopt}.name()] = count;
        for (const auto& [name, want] : e.rows) {
          const std::uint64_t have = got.count(name) ? got[name] : 0;
          if (have != want)
            result.mismatches.push_back(name + ": expected " + std::to_string(want) + ", got " + std::to_string(have));
        }
        for (const auto& [key, count] : merged) {
          const std::string name = GroupId{key.first, key.second, std::nullopt}.name();
          const bool free = key.first.kind == BaseKind::Trivial;
          if (!e.rows.count(name) && (e.complete_table || !free))
            result.mismatches.push_back(name + ": expected 0, got " + std::to_string(count));
        }
        if (e.total && total != e.total)
          result.mismatches.push_back("total: expected " + std::to_string(e.total) + ", got " + std::to_string(total));
        if (result.mismatches.empty()) out << "no differences\n";
        for (const auto& s : result.mismatches) out << "- " << s << '\n';
      }
      out << '\n';
    }
  }

  // group-set files from cone-extension runs
  for (const auto& p : files) {
    const std::string name = p.filename().string();
    if (name != "groups.json") continue;
    std::ifstream in(p);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error&) {
      throw ParseError(p.string() + ": corrupt groups file");
    }
    any = true;
    const int nn = j.at("n").get<int>();
    const SearchMode mode = parse_search_mode(j.at("mode").get<std::string>());
    const bool complete = j.at("complete").get<bool>();
    out << "# Groups up to free factors, n = " << nn << ", mode " << to_string(mode) << "\n\n";
    if (!complete) {
      out << "PARTIAL: " << j.at("units_done").get<std::size_t>() << " of " << j.at("units_total").get<std::size_t>()
          << " complexes processed";
      if (!j.at("shards").empty()) {
        out << " (shards";
        for (const auto& s : j["shards"]) out << ' ' << s.get<std::string>();
        out << ")";
      }
      out << "\n\n";
      result.partial = true;
    }
    std::set<std::string> bases;
    out << "| group | witness |\n|---|---|\n";
    for (const auto& g : j.at("groups")) {
      bases.insert(g.at("base").get<std::string>());
      out << "| " << g["base"].get<std::string>() << " | " << g["witness"]["group"].get<std::string>() << " on "
          << g["witness"]["n"].get<int>() << " vertices |\n";
    }
    const auto& s = j.at("stats");
    out << "\ncomplexes: " << s.at("complexes").get<std::uint64_t>() << "\ncases: " << s.at("cases").get<std::uint64_t>()
        << "\npruned: " << s.at("pruned").get<std::uint64_t>() << "\nunrecognized: " << s.at("unknowns").get<std::uint64_t>()
        << "\n\n";
    for (const auto& e : expected_groups()) {
      if (e.n != nn || e.mode != mode) continue;
      out << "## Check against published values\n\n";
      if (!complete) {
        out << "skipped: partial data\n\n";
        continue;
      }
      std::vector<std::string> local;
      for (const auto& b : e.bases)
        if (!bases.count(b)) local.push_back("missing group " + b);
      for (const auto& b : bases)
        if (!e.bases.count(b)) local.push_back("unexpected group " + b);
      if (local.empty()) out << "no differences\n";
      for (const auto& l : local) out << "- " << l << '\n';
      out << '\n';
      result.mismatches.insert(result.mismatches.end(), local.begin(), local.end());
    }
  }
  if (!any) throw ParseError("no distribution or groups files in " + dir.string());
  result.text = out.str();
  return result;
}

}  // namespace pi1scan
