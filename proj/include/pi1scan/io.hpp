#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pi1scan/search.hpp"

namespace pi1scan {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Accepts `0 1 2;1 2 3`, `{"n":4,"facets":[[0,1,2],[1,2,3]]}` or a bare JSON array of
/// facets. Labels are shifted so the smallest becomes 0; unused labels below the
/// largest one are an error, as is a facet contained in another.
Complex parse_complex(const std::string& text);
/// One complex per nonempty line (text format) or a single JSON document.
std::vector<Complex> parse_complexes(std::istream& in);
Complex read_complex_file(const std::filesystem::path& path);

std::string render_text(const Complex& k);
json complex_to_json(const Complex& k);
std::string render_json(const Complex& k);

json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const json& j);

json fingerprint_to_json(const Fingerprint& f);
json group_to_json(const GroupId& g);

std::string mask_hex(std::uint64_t mask);
std::uint64_t parse_mask_hex(const std::string& s);

/// "i/m" with 1 <= i <= m, to a 0-based shard.
Shard parse_shard(const std::string& s);
std::string shard_tag(const Shard& s);  // "i-of-m", 1-based

// ---------------------------------------------------------------------------
// search artifacts

json unit_to_json(const UnitResult& u, int l_vertices);
UnitResult unit_from_json(const json& j, int l_vertices);

/// Reads a checkpoint file; a truncated last line (interrupted write) is ignored.
std::vector<UnitResult> read_checkpoint(const std::filesystem::path& path, int l_vertices);

/// Append-only JSONL writer, flushed per record.
class JsonlWriter {
 public:
  explicit JsonlWriter(const std::filesystem::path& path, bool append = true);
  void write(const json& j);

 private:
  std::unique_ptr<std::ostream> out_;
};

json group_set_to_json(const GroupSetResult& r, const std::vector<std::pair<int, int>>& shards_done = {});
json unknown_to_json(const UnknownCase& u, const std::string& shard);

// ---------------------------------------------------------------------------
// distribution tables

void write_distribution_csv(std::ostream& out, int n, const Distribution& d);
struct DistributionFile {
  int n = 0;
  Distribution counts;
};
DistributionFile read_distribution_csv(std::istream& in);

/// Published distribution rows, keyed by group name; empty when nothing is known for n.
/// `complete_table` tells whether the rows cover every class (otherwise only the listed
/// rows and the absence of other non-free groups are checked).
struct ExpectedDistribution {
  std::map<std::string, std::uint64_t> rows;
  bool complete_table = false;
  std::uint64_t total = 0;
};
ExpectedDistribution expected_distribution(int n);

struct ReportResult {
  std::string text;
  bool partial = false;
  std::vector<std::string> mismatches;
};

/// Markdown tables for the distribution files (and groups files) in `dir`, with a diff
/// against the expected values.
ReportResult make_report(const std::filesystem::path& dir);

}  // namespace pi1scan
