#include "adx/cochange.hpp"

#include <algorithm>
#include <map>

#include "adx/error.hpp"

namespace adx {

CoChangeMatrix::CoChangeMatrix(std::vector<std::vector<Partner>> partners)
    : partners_(std::move(partners)) {}

std::uint32_t CoChangeMatrix::count(FileId f, FileId g) const {
  if (f >= partners_.size() || g >= partners_.size()) return 0;
  const auto& row = partners_[f];
  auto it = std::lower_bound(
      row.begin(), row.end(), g,
      [](const Partner& p, FileId id) { return p.file < id; });
  return (it != row.end() && it->file == g) ? it->count : 0;
}

std::size_t CoChangeMatrix::pair_count() const {
  std::size_t total = 0;
  for (const auto& row : partners_) total += row.size();
  return total / 2;
}

std::vector<std::vector<FileId>> commit_file_sets(
    const Snapshot& snapshot, std::optional<std::size_t> max_commit_size) {
  if (max_commit_size && *max_commit_size < 2) {
    throw Error(ErrorCode::InvalidArgument, "max_commit_size must be >= 2");
  }
  std::vector<std::vector<FileId>> sets;
  sets.reserve(snapshot.commits().size());
  for (const auto& c : snapshot.commits()) {
    std::vector<FileId> files;
    files.reserve(c.changes.size());
    for (const auto& ch : c.changes) files.push_back(ch.file);
    std::sort(files.begin(), files.end());
    files.erase(std::unique(files.begin(), files.end()), files.end());
    if (files.size() < 2) continue;
    if (max_commit_size && files.size() > *max_commit_size) continue;
    sets.push_back(std::move(files));
  }
  return sets;
}

CoChangeMatrix cochange_from_sets(std::size_t n,
                                  std::span<const std::vector<FileId>> commits) {
  // file -> commits touching it
  std::vector<std::size_t> offsets(n + 1, 0);
  for (const auto& files : commits) {
    for (FileId f : files) ++offsets[f + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  std::vector<std::uint32_t> touching(offsets[n]);
  {
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::size_t c = 0; c < commits.size(); ++c) {
      for (FileId f : commits[c]) touching[cursor[f]++] = static_cast<std::uint32_t>(c);
    }
  }

  std::vector<std::vector<CoChangeMatrix::Partner>> partners(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel
  {
    std::vector<std::uint32_t> counter(n, 0);
    std::vector<FileId> seen;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t fi = 0; fi < count; ++fi) {
      const auto f = static_cast<FileId>(fi);
      seen.clear();
      for (std::size_t k = offsets[f]; k < offsets[f + 1]; ++k) {
        for (FileId g : commits[touching[k]]) {
          if (g == f) continue;
          if (counter[g]++ == 0) seen.push_back(g);
        }
      }
      std::sort(seen.begin(), seen.end());
      auto& row = partners[f];
      row.reserve(seen.size());
      for (FileId g : seen) {
        row.push_back({g, counter[g]});
        counter[g] = 0;
      }
    }
  }
  return CoChangeMatrix(std::move(partners));
}

CoChangeMatrix cochange_from_sets_serial(
    std::size_t n, std::span<const std::vector<FileId>> commits) {
  std::map<std::pair<FileId, FileId>, std::uint32_t> pairs;
  for (const auto& files : commits) {
    for (std::size_t i = 0; i < files.size(); ++i) {
      for (std::size_t j = i + 1; j < files.size(); ++j) {
        ++pairs[{files[i], files[j]}];
      }
    }
  }
  std::vector<std::vector<CoChangeMatrix::Partner>> partners(n);
  for (const auto& [key, count] : pairs) {
    partners[key.first].push_back({key.second, count});
    partners[key.second].push_back({key.first, count});
  }
  for (auto& row : partners) {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.file < b.file; });
  }
  return CoChangeMatrix(std::move(partners));
}

CoChangeMatrix cochange_matrix(const Snapshot& snapshot,
                               std::optional<std::size_t> max_commit_size) {
  const auto sets = commit_file_sets(snapshot, max_commit_size);
  return cochange_from_sets(snapshot.size(), sets);
}

CoChangeMatrix cochange_matrix_serial(const Snapshot& snapshot,
                                      std::optional<std::size_t> max_commit_size) {
  const auto sets = commit_file_sets(snapshot, max_commit_size);
  return cochange_from_sets_serial(snapshot.size(), sets);
}

}  // namespace adx
