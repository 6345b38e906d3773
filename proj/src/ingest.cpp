#include "adx/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "adx/error.hpp"
#include "adx/timeutil.hpp"

namespace adx {
namespace {

using json = nlohmann::json;

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 1;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({number++, line});
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

// RFC 4180 fields on a single line; quotes may wrap fields containing commas.
std::optional<std::vector<std::string>> split_csv(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty() && !was_quoted) {
      quoted = was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      field += c;
    }
  }
  if (quoted) return std::nullopt;
  fields.push_back(std::move(field));
  return fields;
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

enum class InputFormat { Csv, Json };

InputFormat detect_format(std::string_view text, std::string_view expected_header) {
  auto body = trim(text);
  while (!body.empty() && (body.front() == '\n' || body.front() == '\r')) {
    body.remove_prefix(1);
    body = trim(body);
  }
  if (!body.empty() && body.front() == '[') return InputFormat::Json;
  auto first = body.substr(0, body.find('\n'));
  if (!first.empty() && first.back() == '\r') first.remove_suffix(1);
  if (first.substr(0, expected_header.size()) == expected_header) return InputFormat::Csv;
  throw Error(ErrorCode::UnknownFormat,
              "expected CSV with header `" + std::string(expected_header) +
                  "` or a JSON array");
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
};

CsvTable read_csv(std::string_view text) {
  CsvTable table;
  bool have_header = false;
  for (const auto& line : split_lines(text)) {
    if (is_blank(line.text)) continue;
    auto fields = split_csv(line.text);
    if (!fields) {
      throw Error(ErrorCode::MalformedRow,
                  "unterminated quote on line " + std::to_string(line.number),
                  line.number);
    }
    for (auto& f : *fields) f = std::string(trim(f));
    if (!have_header) {
      table.header = std::move(*fields);
      have_header = true;
    } else {
      table.rows.emplace_back(line.number, std::move(*fields));
    }
  }
  return table;
}

json parse_json_array(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::UnknownFormat, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorCode::UnknownFormat, "expected a JSON array");
  }
  return doc;
}

[[noreturn]] void malformed(std::size_t line, const std::string& why) {
  throw Error(ErrorCode::MalformedRow,
              "line " + std::to_string(line) + ": " + why, line);
}

std::uint32_t parse_weight(std::string_view text, std::size_t line) {
  if (text.empty()) return 1;
  std::uint32_t value = 0;
  auto r = std::from_chars(text.data(), text.data() + text.size(), value);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size() || value == 0) {
    malformed(line, "weight must be a positive integer");
  }
  return value;
}

std::optional<UnixSeconds> parse_optional_time(std::string_view text,
                                               std::size_t line) {
  if (text.empty()) return std::nullopt;
  auto t = parse_iso8601(text);
  if (!t) malformed(line, "bad timestamp `" + std::string(text) + "`");
  return t;
}

std::string json_string(const json& obj, const char* key, std::size_t row,
                        bool required = true) {
  if (!obj.contains(key) || obj.at(key).is_null()) {
    if (required) malformed(row, std::string("missing field ") + key);
    return {};
  }
  if (!obj.at(key).is_string()) malformed(row, std::string(key) + " must be a string");
  return obj.at(key).get<std::string>();
}

void check_issue(const Issue& issue, std::size_t line) {
  if (issue.key.empty()) malformed(line, "empty issue key");
  if (issue.opened_at && issue.closed_at && *issue.closed_at < *issue.opened_at) {
    malformed(line, "issue " + issue.key + " closed before it was opened");
  }
}

void check_unique_keys(const std::vector<Issue>& issues,
                       const std::vector<std::size_t>& lines) {
  std::unordered_set<std::string> keys;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (!keys.insert(issues[i].key).second) {
      throw Error(ErrorCode::DuplicateKey,
                  "line " + std::to_string(lines[i]) + ": duplicate issue key " +
                      issues[i].key,
                  lines[i]);
    }
  }
}

std::optional<std::uint64_t> parse_count(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::uint64_t value = 0;
  auto r = std::from_chars(text.data(), text.data() + text.size(), value);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// Dependencies

std::vector<RawDependencyRecord> parse_deps(std::string_view text) {
  std::vector<RawDependencyRecord> records;
  if (detect_format(text, "source,target,kind") == InputFormat::Json) {
    const auto doc = parse_json_array(text);
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const auto& obj = doc[i];
      const std::size_t row = i + 1;
      if (!obj.is_object()) malformed(row, "expected an object");
      RawDependencyRecord r;
      r.source = json_string(obj, "source", row);
      r.target = json_string(obj, "target", row);
      r.kind = json_string(obj, "kind", row);
      if (obj.contains("weight") && !obj.at("weight").is_null()) {
        if (!obj.at("weight").is_number_unsigned() || obj.at("weight").get<std::uint64_t>() == 0)
          malformed(row, "weight must be a positive integer");
        r.weight = obj.at("weight").get<std::uint32_t>();
      }
      if (r.source.empty() || r.target.empty()) malformed(row, "empty path");
      records.push_back(std::move(r));
    }
    return records;
  }

  const auto table = read_csv(text);
  const bool has_weight = table.header.size() >= 4 && table.header[3] == "weight";
  for (const auto& [line, fields] : table.rows) {
    if (fields.size() < 3 || fields.size() > (has_weight ? 4u : 3u)) {
      malformed(line, "expected source,target,kind" +
                          std::string(has_weight ? "[,weight]" : "") + ", got " +
                          std::to_string(fields.size()) + " columns");
    }
    RawDependencyRecord r{fields[0], fields[1], fields[2], 1};
    if (fields.size() == 4) r.weight = parse_weight(fields[3], line);
    if (r.source.empty() || r.target.empty()) malformed(line, "empty path");
    records.push_back(std::move(r));
  }
  return records;
}

std::string write_deps_csv(const std::vector<RawDependencyRecord>& records) {
  std::string out = "source,target,kind,weight\n";
  for (const auto& r : records) {
    out += csv_field(r.source) + ',' + csv_field(r.target) + ',' +
           csv_field(r.kind) + ',' + std::to_string(r.weight) + '\n';
  }
  return out;
}

std::string write_deps_json(const std::vector<RawDependencyRecord>& records) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    doc.push_back({{"source", r.source},
                   {"target", r.target},
                   {"kind", r.kind},
                   {"weight", r.weight}});
  }
  return doc.dump(2) + '\n';
}

// ---------------------------------------------------------------------------
// Version-control log

std::string format_rename(std::string_view a, std::string_view b) {
  // Common prefix ending in '/', common suffix starting with '/'.
  std::size_t pfx = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size() && a[i] == b[i]; ++i) {
    if (a[i] == '/') pfx = i + 1;
  }
  std::size_t sfx = 0;
  {
    const std::size_t adjust = pfx ? 1 : 0;
    // Walk back from the terminators; the prefix slash may be shared.
    std::ptrdiff_t ia = static_cast<std::ptrdiff_t>(a.size());
    std::ptrdiff_t ib = static_cast<std::ptrdiff_t>(b.size());
    const auto lo = static_cast<std::ptrdiff_t>(pfx) - static_cast<std::ptrdiff_t>(adjust);
    auto at = [](std::string_view s, std::ptrdiff_t i) {
      return i == static_cast<std::ptrdiff_t>(s.size()) ? '\0' : s[i];
    };
    while (lo <= ia && lo <= ib && at(a, ia) == at(b, ib)) {
      if (at(a, ia) == '/') sfx = a.size() - ia;
      --ia;
      --ib;
    }
  }
  const auto a_mid = std::max<std::ptrdiff_t>(
      0, static_cast<std::ptrdiff_t>(a.size()) - static_cast<std::ptrdiff_t>(pfx + sfx));
  const auto b_mid = std::max<std::ptrdiff_t>(
      0, static_cast<std::ptrdiff_t>(b.size()) - static_cast<std::ptrdiff_t>(pfx + sfx));
  std::string out;
  if (pfx + sfx > 0) {
    out.append(a.substr(0, pfx));
    out += '{';
    out.append(a.substr(pfx, a_mid));
    out += " => ";
    out.append(b.substr(pfx, b_mid));
    out += '}';
    out.append(a.substr(a.size() - sfx));
  } else {
    out.append(a);
    out += " => ";
    out.append(b);
  }
  return out;
}

std::pair<std::string, std::string> expand_rename(std::string_view field) {
  const auto arrow = field.find(" => ");
  if (arrow == std::string_view::npos) return {std::string{}, std::string(field)};
  const auto open = field.rfind('{', arrow);
  const auto close = field.find('}', arrow);
  if (open == std::string_view::npos || close == std::string_view::npos) {
    return {std::string(field.substr(0, arrow)), std::string(field.substr(arrow + 4))};
  }
  const auto prefix = field.substr(0, open);
  const auto suffix = field.substr(close + 1);
  const auto old_mid = field.substr(open + 1, arrow - open - 1);
  const auto new_mid = field.substr(arrow + 4, close - arrow - 4);
  auto join = [&](std::string_view mid) {
    std::string path(prefix);
    if (mid.empty() && !prefix.empty() && prefix.back() == '/' &&
        !suffix.empty() && suffix.front() == '/') {
      path.append(suffix.substr(1));
    } else {
      path.append(mid);
      path.append(suffix);
    }
    return path;
  };
  return {join(old_mid), join(new_mid)};
}

std::vector<RawCommitRecord> parse_gitlog(std::string_view text) {
  std::vector<RawCommitRecord> commits;
  const auto lines = split_lines(text);
  std::size_t i = 0;
  auto header_error = [](std::size_t line, const std::string& why) {
    return Error(ErrorCode::MalformedHeader,
                 "line " + std::to_string(line) + ": " + why, line);
  };

  while (i < lines.size()) {
    if (is_blank(lines[i].text)) {
      ++i;
      continue;
    }
    if (!starts_with(lines[i].text, "commit ")) {
      throw header_error(lines[i].number, "expected `commit <hash>`");
    }
    RawCommitRecord commit;
    {
      auto rest = trim(lines[i].text.substr(7));
      commit.hash = std::string(rest.substr(0, rest.find(' ')));
      if (commit.hash.empty()) throw header_error(lines[i].number, "empty commit hash");
    }
    const std::size_t commit_line = lines[i].number;
    ++i;

    bool have_author = false;
    bool have_date = false;
    for (; i < lines.size() && !is_blank(lines[i].text); ++i) {
      const auto line = lines[i].text;
      if (starts_with(line, "Author:")) {
        commit.author = std::string(trim(line.substr(7)));
        have_author = true;
      } else if (starts_with(line, "Date:")) {
        auto t = parse_iso8601(trim(line.substr(5)));
        if (!t) throw header_error(lines[i].number, "unparseable date");
        commit.timestamp = *t;
        have_date = true;
      } else if (line.find(':') == std::string_view::npos || starts_with(line, " ")) {
        throw header_error(lines[i].number, "unexpected header line");
      }
      // Other `Key: value` headers (Merge:, Commit:, ...) are ignored.
    }
    if (!have_author || !have_date) {
      throw header_error(commit_line, "commit " + commit.hash + " lacks Author or Date");
    }

    std::vector<std::string> message;
    for (; i < lines.size() && !starts_with(lines[i].text, "commit "); ++i) {
      const auto line = lines[i].text;
      if (starts_with(line, "    ")) {
        if (!commit.numstat.empty()) {
          throw Error(ErrorCode::MalformedNumstat,
                      "line " + std::to_string(lines[i].number) +
                          ": message text after numstat lines",
                      lines[i].number);
        }
        message.emplace_back(line.substr(4));
        continue;
      }
      if (line.empty()) continue;

      auto bad = [&](const std::string& why) {
        return Error(ErrorCode::MalformedNumstat,
                     "line " + std::to_string(lines[i].number) + ": " + why,
                     lines[i].number);
      };
      const auto t1 = line.find('\t');
      const auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
      if (t2 == std::string_view::npos) throw bad("expected <added>\\t<deleted>\\t<path>");
      const auto added = line.substr(0, t1);
      const auto deleted = line.substr(t1 + 1, t2 - t1 - 1);
      const auto path = line.substr(t2 + 1);
      if (path.empty()) throw bad("empty path");
      NumstatEntry entry;
      if (added == "-" && deleted == "-") {
        entry.binary = true;
      } else {
        auto a = parse_count(added);
        auto d = parse_count(deleted);
        if (!a || !d) throw bad("counts must be non-negative integers or `-`");
        entry.added = *a;
        entry.deleted = *d;
      }
      auto [old_path, new_path] = expand_rename(path);
      entry.path = std::move(new_path);
      if (!old_path.empty()) entry.old_path = std::move(old_path);
      commit.numstat.push_back(std::move(entry));
    }
    for (std::size_t k = 0; k < message.size(); ++k) {
      if (k) commit.message += '\n';
      commit.message += message[k];
    }
    commits.push_back(std::move(commit));
  }
  return commits;
}

std::string write_gitlog(const std::vector<RawCommitRecord>& commits) {
  std::string out;
  for (std::size_t i = 0; i < commits.size(); ++i) {
    const auto& c = commits[i];
    out += "commit " + c.hash + '\n';
    out += "Author: " + c.author + '\n';
    out += "Date:   " + format_iso8601(c.timestamp) + '\n';
    out += '\n';
    std::string_view msg = c.message;
    while (true) {
      auto nl = msg.find('\n');
      out += "    ";
      out.append(msg.substr(0, nl));
      out += '\n';
      if (nl == std::string_view::npos) break;
      msg.remove_prefix(nl + 1);
    }
    out += '\n';
    for (const auto& e : c.numstat) {
      if (e.binary) {
        out += "-\t-\t";
      } else {
        out += std::to_string(e.added) + '\t' + std::to_string(e.deleted) + '\t';
      }
      out += e.old_path ? format_rename(*e.old_path, e.path) : e.path;
      out += '\n';
    }
    if (!c.numstat.empty() && i + 1 < commits.size()) out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Issues, releases, files

std::vector<Issue> parse_issues(std::string_view text) {
  std::vector<Issue> issues;
  std::vector<std::size_t> lines;
  if (detect_format(text, "key,kind,opened_at,closed_at,status") == InputFormat::Json) {
    const auto doc = parse_json_array(text);
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const auto& obj = doc[i];
      const std::size_t row = i + 1;
      if (!obj.is_object()) malformed(row, "expected an object");
      Issue issue;
      issue.key = json_string(obj, "key", row);
      issue.kind = parse_issue_kind(json_string(obj, "kind", row, false));
      issue.opened_at = parse_optional_time(json_string(obj, "opened_at", row, false), row);
      issue.closed_at = parse_optional_time(json_string(obj, "closed_at", row, false), row);
      issue.status = parse_issue_status(json_string(obj, "status", row, false));
      check_issue(issue, row);
      issues.push_back(std::move(issue));
      lines.push_back(row);
    }
  } else {
    const auto table = read_csv(text);
    for (const auto& [line, fields] : table.rows) {
      if (fields.size() != 5) {
        malformed(line, "expected 5 columns, got " + std::to_string(fields.size()));
      }
      Issue issue;
      issue.key = fields[0];
      issue.kind = parse_issue_kind(fields[1]);
      issue.opened_at = parse_optional_time(fields[2], line);
      issue.closed_at = parse_optional_time(fields[3], line);
      issue.status = parse_issue_status(fields[4]);
      check_issue(issue, line);
      issues.push_back(std::move(issue));
      lines.push_back(line);
    }
  }
  check_unique_keys(issues, lines);
  return issues;
}

std::string write_issues_csv(const std::vector<Issue>& issues) {
  std::string out = "key,kind,opened_at,closed_at,status\n";
  for (const auto& i : issues) {
    out += csv_field(i.key) + ',' + std::string(to_string(i.kind)) + ',' +
           (i.opened_at ? format_iso8601(*i.opened_at) : "") + ',' +
           (i.closed_at ? format_iso8601(*i.closed_at) : "") + ',' +
           std::string(to_string(i.status)) + '\n';
  }
  return out;
}

std::string write_issues_json(const std::vector<Issue>& issues) {
  using ojson = nlohmann::ordered_json;
  ojson doc = ojson::array();
  for (const auto& i : issues) {
    doc.push_back({{"key", i.key},
                   {"kind", to_string(i.kind)},
                   {"opened_at", i.opened_at ? ojson(format_iso8601(*i.opened_at)) : ojson()},
                   {"closed_at", i.closed_at ? ojson(format_iso8601(*i.closed_at)) : ojson()},
                   {"status", to_string(i.status)}});
  }
  return doc.dump(2) + '\n';
}

std::vector<Release> parse_releases(std::string_view text) {
  std::vector<Release> releases;
  std::set<std::string> names;
  auto add = [&](Release r, std::size_t line) {
    if (r.name.empty()) malformed(line, "empty release name");
    if (!names.insert(r.name).second) {
      throw Error(ErrorCode::DuplicateKey,
                  "line " + std::to_string(line) + ": duplicate release " + r.name, line);
    }
    releases.push_back(std::move(r));
  };
  if (detect_format(text, "name,timestamp") == InputFormat::Json) {
    const auto doc = parse_json_array(text);
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const std::size_t row = i + 1;
      if (!doc[i].is_object()) malformed(row, "expected an object");
      auto t = parse_optional_time(json_string(doc[i], "timestamp", row), row);
      add({json_string(doc[i], "name", row), *t}, row);
    }
  } else {
    const auto table = read_csv(text);
    for (const auto& [line, fields] : table.rows) {
      if (fields.size() != 2) malformed(line, "expected name,timestamp");
      auto t = parse_optional_time(fields[1], line);
      if (!t) malformed(line, "missing timestamp");
      add({fields[0], *t}, line);
    }
  }
  return releases;
}

std::vector<FileSpec> parse_files(std::string_view text) {
  std::vector<FileSpec> files;
  if (detect_format(text, "path") == InputFormat::Json) {
    const auto doc = parse_json_array(text);
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const std::size_t row = i + 1;
      if (!doc[i].is_object()) malformed(row, "expected an object");
      FileSpec f{json_string(doc[i], "path", row), std::nullopt};
      auto pkg = json_string(doc[i], "package", row, false);
      if (!pkg.empty()) f.package = pkg;
      files.push_back(std::move(f));
    }
  } else {
    const auto table = read_csv(text);
    for (const auto& [line, fields] : table.rows) {
      if (fields.empty() || fields.size() > 2 || fields[0].empty()) {
        malformed(line, "expected path[,package]");
      }
      FileSpec f{fields[0], std::nullopt};
      if (fields.size() == 2 && !fields[1].empty()) f.package = fields[1];
      files.push_back(std::move(f));
    }
  }
  return files;
}

// ---------------------------------------------------------------------------
// Linking

LinkReport link_commits(std::vector<RawCommitRecord>& commits,
                        const std::vector<Issue>& issues, const LinkRule& rule) {
  std::regex pattern;
  try {
    pattern = std::regex(rule.pattern, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw Error(ErrorCode::InvalidPattern,
                "issue key pattern does not compile: " + rule.pattern);
  }
  std::unordered_set<std::string> known;
  for (const auto& i : issues) known.insert(i.key);

  LinkReport report;
  for (auto& c : commits) {
    c.linked_issues.clear();
    std::set<std::string> unmatched;
    for (std::sregex_iterator it(c.message.begin(), c.message.end(), pattern), end;
         it != end; ++it) {
      const auto& m = *it;
      std::string key = m.size() > 1 && m[1].matched ? m[1].str() : m[0].str();
      if (key.empty()) continue;
      if (known.contains(key)) {
        c.linked_issues.insert(std::move(key));
      } else {
        unmatched.insert(std::move(key));
      }
    }
    for (auto& key : unmatched) report.unmatched.push_back({c.hash, key});
    if (!c.linked_issues.empty()) ++report.linked_commits;
  }
  return report;
}

}  // namespace adx
