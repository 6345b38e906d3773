#include "adx/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>

namespace adx {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

constexpr std::array<std::string_view, kDependencyKindCount> kKindNames = {
    "Call", "Use", "Create", "Cast", "Throw", "Extend", "Implement", "Other"};
constexpr std::array<std::string_view, kDependencyKindCount> kKindAbbrev = {
    "Cl", "Us", "Cr", "Ca", "Th", "Ex", "Im", "Ot"};

}  // namespace

std::string_view to_string(DependencyKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

std::string_view abbreviation(DependencyKind kind) {
  return kKindAbbrev[static_cast<std::size_t>(kind)];
}

std::optional<DependencyKind> parse_dependency_kind(std::string_view text) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (iequals(text, kKindNames[i])) return static_cast<DependencyKind>(i);
  }
  return std::nullopt;
}

std::string_view to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::Bug: return "Bug";
    case IssueKind::Feature: return "Feature";
    case IssueKind::Task: return "Task";
    case IssueKind::Improvement: return "Improvement";
    case IssueKind::Other: return "Other";
  }
  return "Other";
}

std::string_view to_string(IssueStatus status) {
  switch (status) {
    case IssueStatus::Open: return "Open";
    case IssueStatus::Fixed: return "Fixed";
    case IssueStatus::Closed: return "Closed";
    case IssueStatus::Other: return "Other";
  }
  return "Other";
}

IssueKind parse_issue_kind(std::string_view text) {
  for (auto k : {IssueKind::Bug, IssueKind::Feature, IssueKind::Task,
                 IssueKind::Improvement}) {
    if (iequals(text, to_string(k))) return k;
  }
  return IssueKind::Other;
}

IssueStatus parse_issue_status(std::string_view text) {
  for (auto s : {IssueStatus::Open, IssueStatus::Fixed, IssueStatus::Closed}) {
    if (iequals(text, to_string(s))) return s;
  }
  return IssueStatus::Other;
}

std::uint64_t Commit::churn() const {
  return std::accumulate(
      changes.begin(), changes.end(), std::uint64_t{0},
      [](std::uint64_t acc, const FileChange& c) { return acc + c.churn(); });
}

}  // namespace adx
