#include "adx/snapshot.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "adx/error.hpp"
#include "adx/ingest.hpp"
#include "adx/timeutil.hpp"

namespace adx {
namespace {

// Union-find over path strings; each set remembers the path most recently
// introduced by a rename, which becomes the canonical name.
class RenameUnifier {
 public:
  void rename(const std::string& from, const std::string& to,
              std::size_t order) {
    const std::size_t a = find(intern(from));
    const std::size_t b = find(intern(to));
    if (a != b) {
      parent_[a] = b;
    }
    newest_[b] = {order, to};
  }

  std::string canonical(const std::string& path) {
    auto it = index_.find(path);
    if (it == index_.end()) return path;
    const auto& newest = newest_[find(it->second)];
    return newest.second.empty() ? path : newest.second;
  }

 private:
  std::size_t intern(const std::string& path) {
    auto [it, inserted] = index_.try_emplace(path, parent_.size());
    if (inserted) {
      parent_.push_back(parent_.size());
      newest_.emplace_back(0, std::string{});
    }
    return it->second;
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  std::map<std::string, std::size_t> index_;
  std::vector<std::size_t> parent_;
  std::vector<std::pair<std::size_t, std::string>> newest_;
};

// History order: by timestamp, ties by position in the input.
std::vector<std::size_t> chronological_order(
    std::span<const RawCommitRecord> commits) {
  std::vector<std::size_t> order(commits.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return commits[a].timestamp < commits[b].timestamp;
  });
  return order;
}

nlohmann::ordered_json optional_time(const std::optional<UnixSeconds>& t) {
  return t ? nlohmann::ordered_json(format_iso8601(*t)) : nlohmann::ordered_json();
}

UnixSeconds require_time(const nlohmann::json& value, const char* what) {
  if (!value.is_string()) {
    throw Error(ErrorCode::InvalidSnapshot, std::string(what) + " must be an ISO-8601 string");
  }
  auto t = parse_iso8601(value.get<std::string>());
  if (!t) {
    throw Error(ErrorCode::InvalidSnapshot,
                std::string("bad timestamp for ") + what + ": " +
                    value.get<std::string>());
  }
  return *t;
}

std::optional<UnixSeconds> optional_time_from(const nlohmann::json& obj,
                                              const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return require_time(obj.at(key), key);
}

}  // namespace

std::string default_package(std::string_view path) {
  const auto slash = path.rfind('/');
  if (slash == std::string_view::npos || slash == 0) return ".";
  return std::string(path.substr(0, slash));
}

std::vector<FileSpec> files_from_dependencies(
    std::span<const RawDependencyRecord> edges) {
  std::set<std::string> paths;
  for (const auto& e : edges) {
    paths.insert(e.source);
    paths.insert(e.target);
  }
  std::vector<FileSpec> files;
  files.reserve(paths.size());
  for (const auto& p : paths) files.push_back({p, std::nullopt});
  return files;
}

Snapshot Snapshot::from_parts(Parts parts) {
  Snapshot s;
  const std::size_t n = parts.files.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& f = parts.files[i];
    if (f.id != i) {
      throw Error(ErrorCode::InvalidSnapshot, "file ids must be contiguous from 0");
    }
    if (f.package.empty()) {
      throw Error(ErrorCode::InvalidSnapshot, "empty package for " + f.path);
    }
    if (!s.path_index_.emplace(f.path, static_cast<FileId>(i)).second) {
      throw Error(ErrorCode::DuplicatePath, "duplicate path: " + f.path);
    }
  }
  s.graph_ = DependencyGraph(n, std::move(parts.edges));

  for (auto& c : parts.commits) {
    for (const auto& ch : c.changes) {
      if (ch.file >= n) {
        throw Error(ErrorCode::InvalidSnapshot,
                    "commit " + c.id + " references unknown file id " +
                        std::to_string(ch.file));
      }
    }
  }
  for (std::size_t i = 0; i < parts.issues.size(); ++i) {
    const auto& issue = parts.issues[i];
    if (!s.issue_index_.emplace(issue.key, i).second) {
      throw Error(ErrorCode::DuplicateKey, "duplicate issue key: " + issue.key);
    }
    if (issue.opened_at && issue.closed_at && *issue.closed_at < *issue.opened_at) {
      throw Error(ErrorCode::InvalidSnapshot,
                  "issue " + issue.key + " closed before it was opened");
    }
  }
  std::set<std::string> release_names;
  for (const auto& r : parts.releases) {
    if (!release_names.insert(r.name).second) {
      throw Error(ErrorCode::InvalidSnapshot, "duplicate release: " + r.name);
    }
  }

  s.files_ = std::move(parts.files);
  s.commits_ = std::move(parts.commits);
  s.issues_ = std::move(parts.issues);
  s.releases_ = std::move(parts.releases);
  s.metadata_ = std::move(parts.metadata);
  return s;
}

std::optional<FileId> Snapshot::find(std::string_view path) const {
  auto it = path_index_.find(std::string(path));
  if (it == path_index_.end()) return std::nullopt;
  return it->second;
}

const Issue* Snapshot::find_issue(std::string_view key) const {
  auto it = issue_index_.find(std::string(key));
  return it == issue_index_.end() ? nullptr : &issues_[it->second];
}

std::uint64_t Snapshot::total_churn() const {
  std::uint64_t total = 0;
  for (const auto& c : commits_) total += c.churn();
  return total;
}

Snapshot build_snapshot(std::span<const FileSpec> files,
                        std::span<const RawDependencyRecord> edges,
                        std::span<const RawCommitRecord> commits,
                        std::span<const Issue> issues,
                        std::span<const Release> releases, std::string label) {
  std::map<std::string, std::optional<std::string>> declared;
  for (const auto& f : files) {
    if (f.path.empty()) {
      throw Error(ErrorCode::InvalidSnapshot, "empty file path");
    }
    if (!declared.emplace(f.path, f.package).second) {
      throw Error(ErrorCode::DuplicatePath, "duplicate path: " + f.path);
    }
  }

  const auto order = chronological_order(commits);
  RenameUnifier renames;
  std::size_t rename_seq = 0;
  for (std::size_t idx : order) {
    for (const auto& entry : commits[idx].numstat) {
      if (entry.old_path && *entry.old_path != entry.path) {
        renames.rename(*entry.old_path, entry.path, ++rename_seq);
      }
    }
  }

  // Every path: declared files plus canonical history paths.
  std::map<std::string, FileId> ids;
  for (const auto& [path, _] : declared) ids.emplace(path, 0);
  std::vector<std::vector<std::string>> canonical_paths(commits.size());
  for (std::size_t i = 0; i < commits.size(); ++i) {
    for (const auto& entry : commits[i].numstat) {
      auto path = renames.canonical(entry.path);
      ids.emplace(path, 0);
      canonical_paths[i].push_back(std::move(path));
    }
  }
  FileId next = 0;
  for (auto& [_, id] : ids) id = next++;

  Snapshot::Parts parts;
  parts.files.reserve(ids.size());
  for (const auto& [path, id] : ids) {
    FileNode node;
    node.id = id;
    node.path = path;
    auto it = declared.find(path);
    node.package = (it != declared.end() && it->second && !it->second->empty())
                       ? *it->second
                       : default_package(path);
    parts.files.push_back(std::move(node));
  }

  for (const auto& e : edges) {
    auto s = ids.find(e.source);
    auto t = ids.find(e.target);
    if (s == ids.end() || !declared.contains(e.source) || t == ids.end() ||
        !declared.contains(e.target)) {
      throw Error(ErrorCode::DanglingEdgeEndpoint,
                  "dependency on undeclared file: " + e.source + " -> " + e.target);
    }
    if (s->second == t->second) {
      throw Error(ErrorCode::SelfDependency, "self dependency: " + e.source);
    }
    // Unknown kinds fall back to Other; the parser already warned.
    const auto kind = parse_dependency_kind(e.kind).value_or(DependencyKind::Other);
    parts.edges.push_back({s->second, t->second, kind, std::max(e.weight, 1u)});
  }

  UnixSeconds latest = 0;
  parts.commits.resize(commits.size());
  for (std::size_t i = 0; i < commits.size(); ++i) {
    const auto& raw = commits[i];
    auto& c = parts.commits[i];
    c.id = raw.hash;
    c.timestamp = raw.timestamp;
    c.author = raw.author;
    c.message = raw.message;
    c.linked_issues = raw.linked_issues;
    std::map<FileId, FileChange> merged;
    for (std::size_t j = 0; j < raw.numstat.size(); ++j) {
      const auto& entry = raw.numstat[j];
      const FileId id = ids.at(canonical_paths[i][j]);
      auto& ch = merged[id];
      ch.file = id;
      ch.added += entry.added;
      ch.deleted += entry.deleted;
      ch.binary = ch.binary || entry.binary;
    }
    for (auto& [_, ch] : merged) c.changes.push_back(ch);
    latest = std::max(latest, raw.timestamp);
  }

  for (std::size_t idx : order) {
    for (const auto& ch : parts.commits[idx].changes) {
      auto& node = parts.files[ch.file];
      if (!node.creator) node.creator = parts.commits[idx].author;
    }
  }

  parts.issues.assign(issues.begin(), issues.end());
  for (const auto& issue : issues) {
    if (issue.opened_at) latest = std::max(latest, *issue.opened_at);
    if (issue.closed_at) latest = std::max(latest, *issue.closed_at);
  }
  parts.releases.assign(releases.begin(), releases.end());
  for (const auto& r : releases) latest = std::max(latest, r.timestamp);

  parts.metadata.label = std::move(label);
  parts.metadata.created_at = latest;
  return Snapshot::from_parts(std::move(parts));
}

nlohmann::ordered_json snapshot_to_json(const Snapshot& snapshot) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["schema_version"] = snapshot.metadata().schema_version;
  doc["metadata"] = {{"label", snapshot.metadata().label},
                     {"creation_time", format_iso8601(snapshot.metadata().created_at)},
                     {"schema_version", snapshot.metadata().schema_version}};

  json files = json::array();
  for (const auto& f : snapshot.files()) {
    files.push_back({{"id", f.id},
                     {"path", f.path},
                     {"package", f.package},
                     {"creator", f.creator ? json(*f.creator) : json()}});
  }
  doc["files"] = std::move(files);

  json edges = json::array();
  for (const auto& e : snapshot.graph().edges()) {
    edges.push_back({{"source", e.source},
                     {"target", e.target},
                     {"kind", to_string(e.kind)},
                     {"weight", e.weight}});
  }
  doc["graph"] = {{"n", snapshot.graph().size()}, {"edges", std::move(edges)}};

  json commits = json::array();
  for (const auto& c : snapshot.commits()) {
    json changes = json::array();
    for (const auto& ch : c.changes) {
      changes.push_back({{"file", ch.file},
                         {"added", ch.added},
                         {"deleted", ch.deleted},
                         {"binary", ch.binary}});
    }
    commits.push_back({{"id", c.id},
                       {"timestamp", format_iso8601(c.timestamp)},
                       {"author", c.author},
                       {"message", c.message},
                       {"changes", std::move(changes)},
                       {"linked_issues", c.linked_issues}});
  }
  doc["commits"] = std::move(commits);

  json issues = json::array();
  for (const auto& i : snapshot.issues()) {
    issues.push_back({{"key", i.key},
                      {"kind", to_string(i.kind)},
                      {"opened_at", optional_time(i.opened_at)},
                      {"closed_at", optional_time(i.closed_at)},
                      {"status", to_string(i.status)}});
  }
  doc["issues"] = std::move(issues);

  json releases = json::array();
  for (const auto& r : snapshot.releases()) {
    releases.push_back({{"name", r.name}, {"timestamp", format_iso8601(r.timestamp)}});
  }
  doc["releases"] = std::move(releases);
  return doc;
}

Snapshot snapshot_from_json(const nlohmann::json& doc) {
  try {
    const auto version = doc.at("schema_version").get<std::string>();
    if (version != kSchemaVersion) {
      throw Error(ErrorCode::InvalidSnapshot,
                  "unsupported snapshot schema_version " + version);
    }
    Snapshot::Parts parts;
    const auto& meta = doc.at("metadata");
    parts.metadata.label = meta.at("label").get<std::string>();
    parts.metadata.created_at = require_time(meta.at("creation_time"), "creation_time");
    parts.metadata.schema_version = version;

    for (const auto& f : doc.at("files")) {
      FileNode node;
      node.id = f.at("id").get<FileId>();
      node.path = f.at("path").get<std::string>();
      node.package = f.at("package").get<std::string>();
      if (f.contains("creator") && !f.at("creator").is_null()) {
        node.creator = f.at("creator").get<std::string>();
      }
      parts.files.push_back(std::move(node));
    }
    const auto& graph = doc.at("graph");
    if (graph.at("n").get<std::size_t>() != parts.files.size()) {
      throw Error(ErrorCode::InvalidSnapshot, "graph.n does not match file count");
    }
    for (const auto& e : graph.at("edges")) {
      const auto kind_name = e.at("kind").get<std::string>();
      parts.edges.push_back(
          {e.at("source").get<FileId>(), e.at("target").get<FileId>(),
           parse_dependency_kind(kind_name).value_or(DependencyKind::Other),
           e.at("weight").get<std::uint32_t>()});
    }
    for (const auto& c : doc.at("commits")) {
      Commit commit;
      commit.id = c.at("id").get<std::string>();
      commit.timestamp = require_time(c.at("timestamp"), "timestamp");
      commit.author = c.at("author").get<std::string>();
      commit.message = c.at("message").get<std::string>();
      for (const auto& ch : c.at("changes")) {
        commit.changes.push_back({ch.at("file").get<FileId>(),
                                  ch.at("added").get<std::uint64_t>(),
                                  ch.at("deleted").get<std::uint64_t>(),
                                  ch.value("binary", false)});
      }
      commit.linked_issues = c.at("linked_issues").get<std::set<std::string>>();
      parts.commits.push_back(std::move(commit));
    }
    for (const auto& i : doc.at("issues")) {
      Issue issue;
      issue.key = i.at("key").get<std::string>();
      issue.kind = parse_issue_kind(i.at("kind").get<std::string>());
      issue.opened_at = optional_time_from(i, "opened_at");
      issue.closed_at = optional_time_from(i, "closed_at");
      issue.status = parse_issue_status(i.at("status").get<std::string>());
      parts.issues.push_back(std::move(issue));
    }
    for (const auto& r : doc.at("releases")) {
      parts.releases.push_back(
          {r.at("name").get<std::string>(), require_time(r.at("timestamp"), "timestamp")});
    }
    return Snapshot::from_parts(std::move(parts));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidSnapshot, std::string("malformed snapshot: ") + e.what());
  }
}

void save_snapshot(const Snapshot& snapshot, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << snapshot_to_json(snapshot).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path);
}

Snapshot load_snapshot(const std::string& path) {
  const auto text = read_text_file(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidSnapshot, path + ": " + e.what());
  }
  return snapshot_from_json(doc);
}

}  // namespace adx
