#include "pi1scan/recognize.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <regex>
#include <stdexcept>

namespace pi1scan {

Fingerprint Fingerprint::with_free_factor(int r) const {
  Fingerprint out = *this;
  out.abelian.rank += r;
  const auto& groups = battery();
  for (std::size_t i = 0; i < out.hom_counts.size(); ++i)
    out.hom_counts[i] *= boost::multiprecision::pow(BigInt(groups[i].order()), static_cast<unsigned>(r));
  return out;
}

Fingerprint fingerprint(const Presentation& p, std::uint64_t hom_work_cap) {
  Fingerprint fp;
  fp.abelian = abelianization(p);
  for (const auto& t : battery()) fp.hom_counts.push_back(count_homs(p, t, hom_work_cap));
  return fp;
}

// ---------------------------------------------------------------------------
// names

std::string GroupBase::name() const {
  switch (kind) {
    case BaseKind::Trivial: return "Trivial";
    case BaseKind::Cyclic: return "Cyclic(" + std::to_string(param1) + ")";
    case BaseKind::ZxZ: return "ZxZ";
    case BaseKind::Klein: return "Klein";
    case BaseKind::B3: return "B3";
    case BaseKind::D6: return "D6";
    case BaseKind::Q8: return "Q8";
    case BaseKind::DInfinity: return "DInfinity";
    case BaseKind::Z2freeZ3: return "Z2freeZ3";
    case BaseKind::ZcrossZ2: return "ZcrossZ2";
    case BaseKind::ZcrossZ3: return "ZcrossZ3";
    case BaseKind::BS: return "BS(" + std::to_string(param1) + "," + std::to_string(param2) + ")";
    case BaseKind::Surface:
      return std::string("Surface(") + (param2 ? "orientable," : "nonorientable,") + std::to_string(param1) + ")";
    case BaseKind::X24: return "X24";
    case BaseKind::Unknown: return "Unknown";
  }
  return "Unknown";
}

GroupBase GroupBase::parse(const std::string& s) {
  static const std::vector<std::pair<std::string, BaseKind>> plain = {
      {"Trivial", BaseKind::Trivial}, {"ZxZ", BaseKind::ZxZ},           {"Klein", BaseKind::Klein},
      {"B3", BaseKind::B3},           {"D6", BaseKind::D6},             {"Q8", BaseKind::Q8},
      {"DInfinity", BaseKind::DInfinity}, {"Z2freeZ3", BaseKind::Z2freeZ3}, {"ZcrossZ2", BaseKind::ZcrossZ2},
      {"ZcrossZ3", BaseKind::ZcrossZ3}, {"X24", BaseKind::X24},         {"Unknown", BaseKind::Unknown}};
  for (const auto& [name, kind] : plain)
    if (s == name) return {kind, 0, 0};
  std::smatch m;
  if (std::regex_match(s, m, std::regex(R"(Cyclic\((\d+)\))"))) return cyclic(std::stoi(m[1]));
  if (std::regex_match(s, m, std::regex(R"(BS\((-?\d+),(-?\d+)\))")))
    return baumslag_solitar(std::stoi(m[1]), std::stoi(m[2]));
  if (std::regex_match(s, m, std::regex(R"(Surface\((orientable|nonorientable),(\d+)\))")))
    return surface(m[1] == "orientable", std::stoi(m[2]));
  throw std::invalid_argument("unknown group name '" + s + "'");
}

std::string GroupId::name() const {
  if (base.kind == BaseKind::Trivial) return free_rank == 0 ? "Trivial" : "Free(" + std::to_string(free_rank) + ")";
  std::string s = base.name();
  if (free_rank > 0) s += "*F" + std::to_string(free_rank);
  return s;
}

GroupId GroupId::parse(const std::string& s) {
  std::smatch m;
  if (std::regex_match(s, m, std::regex(R"(Free\((\d+)\))"))) return {GroupBase{}, std::stoi(m[1]), std::nullopt};
  if (std::regex_match(s, m, std::regex(R"((.*)\*F(\d+))"))) return {GroupBase::parse(m[1]), std::stoi(m[2]), std::nullopt};
  return {GroupBase::parse(s), 0, std::nullopt};
}

// ---------------------------------------------------------------------------
// catalog

namespace {

Word power(int g, int k) { return Word(static_cast<std::size_t>(std::abs(k)), k > 0 ? g : -g); }

Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Word commutator(int a, int b) { return {a, b, -a, -b}; }

std::vector<std::pair<GroupBase, Presentation>> reference_presentations() {
  std::vector<std::pair<GroupBase, Presentation>> refs;
  refs.push_back({GroupBase{}, Presentation{0, {}}});
  for (int m = 2; m <= 16; ++m) refs.push_back({GroupBase::cyclic(m), Presentation{1, {power(1, m)}}});
  refs.push_back({{BaseKind::ZxZ}, Presentation{2, {commutator(1, 2)}}});
  refs.push_back({{BaseKind::Klein}, Presentation{2, {{1, 2, 1, -2}}}});
  refs.push_back({{BaseKind::B3}, Presentation{2, {{1, 2, 1, -2, -1, -2}}}});
  refs.push_back({{BaseKind::D6}, Presentation{2, {power(1, 3), power(2, 2), {1, 2, 1, 2}}}});
  refs.push_back({{BaseKind::Q8}, Presentation{2, {power(1, 4), concat({power(1, 2), power(2, -2)}), {2, 1, -2, 1}}}});
  refs.push_back({{BaseKind::DInfinity}, Presentation{2, {power(1, 2), power(2, 2)}}});
  refs.push_back({{BaseKind::Z2freeZ3}, Presentation{2, {power(1, 2), power(2, 3)}}});
  refs.push_back({{BaseKind::ZcrossZ2}, Presentation{2, {power(1, 2), commutator(1, 2)}}});
  refs.push_back({{BaseKind::ZcrossZ3}, Presentation{2, {power(1, 3), commutator(1, 2)}}});
  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, -2}, {3, 1}, {3, -1}})
    refs.push_back({GroupBase::baumslag_solitar(m, n), Presentation{2, {concat({{2}, power(1, m), {-2}, power(1, -n)})}}});
  refs.push_back({GroupBase::surface(true, 2), Presentation{4, {concat({commutator(1, 2), commutator(3, 4)})}}});
  for (int g = 3; g <= 5; ++g) {
    Word w;
    for (int i = 1; i <= g; ++i) w = concat({w, power(i, 2)});
    refs.push_back({GroupBase::surface(false, g), Presentation{g, {w}}});
  }
  refs.push_back({{BaseKind::X24}, Presentation{2, {concat({power(1, 4), power(2, -2)})}}});
  return refs;
}

}  // namespace

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> entries;
  for (auto& [base, pres] : reference_presentations()) {
    CatalogEntry e;
    e.base = base;
    e.presentation = pres;
    e.fingerprint = fingerprint(pres);
    switch (base.kind) {
      case BaseKind::Trivial: e.order = 1; break;
      case BaseKind::Cyclic: e.order = base.param1; break;
      case BaseKind::D6: e.order = 6; break;
      case BaseKind::Q8: e.order = 8; break;
      default: break;
    }
    entries.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const int ri = entries[i].fingerprint.abelian.rank, rj = entries[j].fingerprint.abelian.rank;
      if (entries[i].fingerprint.with_free_factor(std::max(0, rj - ri)) ==
          entries[j].fingerprint.with_free_factor(std::max(0, ri - rj)))
        throw std::logic_error("catalog fingerprint collision: " + entries[i].base.name() + " vs " +
                               entries[j].base.name());
    }
  return entries;
}

const std::vector<CatalogEntry>& catalog_fingerprints() {
  static const std::vector<CatalogEntry> catalog = build_catalog();
  return catalog;
}

// ---------------------------------------------------------------------------
// recognition

namespace {

struct Core {
  Presentation presentation;  // generators that occur in some relator
  int unused = 0;
};

Core split_unused(const Presentation& p) {
  std::vector<int> map(static_cast<std::size_t>(p.gens) + 1, 0);
  for (const auto& r : p.relators)
    for (int x : r) map[static_cast<std::size_t>(std::abs(x))] = 1;
  Core core;
  int next = 0;
  for (int g = 1; g <= p.gens; ++g) {
    if (map[static_cast<std::size_t>(g)])
      map[static_cast<std::size_t>(g)] = ++next;
    else
      ++core.unused;
  }
  core.presentation.gens = next;
  for (const auto& r : p.relators) {
    Word w;
    w.reserve(r.size());
    for (int x : r) w.push_back(x > 0 ? map[static_cast<std::size_t>(x)] : -map[static_cast<std::size_t>(-x)]);
    core.presentation.relators.push_back(std::move(w));
  }
  return core;
}

// Free products of cyclic groups: every relator is a power of one generator.
std::optional<GroupId> read_free_product_of_cyclics(const Presentation& p) {
  std::vector<int> order(static_cast<std::size_t>(p.gens) + 1, 0);
  for (const auto& r : p.relators) {
    const Word w = free_reduce(r);
    if (w.empty()) continue;
    const int g = std::abs(w.front());
    for (int x : w)
      if (x != w.front()) return std::nullopt;
    order[static_cast<std::size_t>(g)] = std::gcd(order[static_cast<std::size_t>(g)], static_cast<int>(w.size()));
  }
  std::vector<int> finite;
  int free = 0;
  for (int g = 1; g <= p.gens; ++g) {
    int m = order[static_cast<std::size_t>(g)];
    if (m == 0)
      ++free;
    else if (m > 1)
      finite.push_back(m);
  }
  std::sort(finite.begin(), finite.end());
  GroupId id;
  id.free_rank = free;
  if (finite.empty()) {
    id.base = GroupBase{};
  } else if (finite.size() == 1) {
    id.base = GroupBase::cyclic(finite[0]);
  } else if (finite == std::vector<int>{2, 2}) {
    id.base = {BaseKind::DInfinity};
  } else if (finite == std::vector<int>{2, 3}) {
    id.base = {BaseKind::Z2freeZ3};
  } else {
    return std::nullopt;
  }
  return id;
}

}  // namespace

GroupId recognize_by_fingerprint(const Presentation& p, const RecognizeOptions& options) {
  GroupId unknown;
  unknown.base = {BaseKind::Unknown};
  Fingerprint fp;
  try {
    fp = fingerprint(p, options.hom_work_cap);
  } catch (const ResourceCapExceeded&) {
    fp.abelian = abelianization(p);
    unknown.fingerprint = fp;
    return unknown;
  }
  unknown.fingerprint = fp;
  const CatalogEntry* match = nullptr;
  int match_rank = 0;
  for (const auto& e : catalog_fingerprints()) {
    const int r = fp.abelian.rank - e.fingerprint.abelian.rank;
    if (r < 0) continue;
    if (e.fingerprint.with_free_factor(r) != fp) continue;
    if (match) return unknown;  // ambiguous
    match = &e;
    match_rank = r;
  }
  if (!match) return unknown;
  if (match->order && match_rank == 0) {
    auto order = todd_coxeter(p, options.coset_limit);
    if (order && *order != *match->order) return unknown;
  }
  return GroupId{match->base, match_rank, std::nullopt};
}

GroupId recognize(const Presentation& p, const RecognizeOptions& options) {
  Core core = split_unused(p);
  if (auto id = read_free_product_of_cyclics(core.presentation)) {
    id->free_rank += core.unused;
    return *id;
  }
  GroupId id = recognize_by_fingerprint(core.presentation, options);
  if (id.unknown()) {
    if (id.fingerprint) id.fingerprint = id.fingerprint->with_free_factor(core.unused);
    return id;
  }
  id.free_rank += core.unused;
  return id;
}

GroupId fundamental_group(const Complex& k, const RecognizeOptions& options) {
  return recognize(tietze_simplify(edge_path_presentation(k)), options);
}

}  // namespace pi1scan
