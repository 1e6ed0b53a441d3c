#pragma once

#include <optional>
#include <sstream>

#include "gdtk/graph.hpp"

namespace gdtk {

enum class ModelKind { minor, induced_minor };

/// Family of branch sets witnessing a pattern as (induced) minor of a host.
struct MinorModel {
  Graph host;
  Graph pattern;
  std::vector<std::vector<int>> branch_sets;  // one per pattern vertex, sorted
  ModelKind kind = ModelKind::induced_minor;
};

namespace detail {

inline bool sets_touch(const Graph& g, const std::vector<int>& a, const std::vector<int>& b) {
  for (int u : a)
    for (int v : b)
      if (g.has_edge(u, v)) return true;
  return false;
}

}  // namespace detail

/// Checks branch sets are nonempty, disjoint and connected, and that their
/// adjacency realizes the pattern (exactly, for induced minors).  Reports the
/// first violation with the offending vertex or pair.
inline ValidationReport validate_model(const MinorModel& m) {
  const int k = m.pattern.vertex_count();
  if (static_cast<int>(m.branch_sets.size()) != k)
    return {false, "expected " + std::to_string(k) + " branch sets"};
  std::vector<char> used(m.host.vertex_count(), 0);
  for (int i = 0; i < k; ++i) {
    const auto& set = m.branch_sets[i];
    if (set.empty()) return {false, "branch set " + std::to_string(i) + " empty"};
    for (int v : set) {
      if (v < 0 || v >= m.host.vertex_count())
        return {false, "branch set " + std::to_string(i) + " out of range"};
      if (used[v])
        return {false, "branch sets overlap at host vertex " + std::to_string(v)};
      used[v] = 1;
    }
    if (!is_connected_subset(m.host, set))
      return {false, "branch set " + std::to_string(i) + " not connected"};
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      bool touch = detail::sets_touch(m.host, m.branch_sets[i], m.branch_sets[j]);
      bool edge = m.pattern.has_edge(i, j);
      if (edge && !touch)
        return {false, "missing adjacency for pattern edge " + std::to_string(i) + "-" +
                           std::to_string(j)};
      if (m.kind == ModelKind::induced_minor && !edge && touch)
        return {false, "extra adjacency between branch sets " + std::to_string(i) + " and " +
                           std::to_string(j)};
    }
  return {};
}

/// Model format: one line per pattern vertex, "v: u1 u2 ...".
inline std::string model_to_string(const MinorModel& m) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < m.branch_sets.size(); ++i) {
    ss << i << ':';
    for (int v : m.branch_sets[i]) ss << ' ' << v;
    ss << '\n';
  }
  return ss.str();
}

inline std::vector<std::vector<int>> branch_sets_from_stream(std::istream& in, int pattern_size) {
  std::vector<std::vector<int>> sets(pattern_size);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw std::runtime_error("model: missing ':' in line");
    int idx = std::stoi(line.substr(0, colon));
    if (idx < 0 || idx >= pattern_size) throw std::runtime_error("model: bad pattern vertex");
    std::istringstream rest(line.substr(colon + 1));
    int v;
    while (rest >> v) sets[idx].push_back(v);
    std::sort(sets[idx].begin(), sets[idx].end());
  }
  return sets;
}

enum class SearchVerdict { found, absent, budget_exhausted };

struct MinorSearchResult {
  SearchVerdict verdict = SearchVerdict::absent;
  std::optional<MinorModel> model;
  long long nodes_expanded = 0;
};

namespace detail {

/// Exhaustive search over partial branch-set assignments.  Pattern vertices
/// are placed in descending-degree order; candidate branch sets are the
/// connected subsets of the remaining host vertices, enumerated once each in
/// ascending label order.  For induced minors a partial set already touching
/// a forbidden placed set is pruned, since growth only adds adjacencies.
class MinorSearch {
 public:
  MinorSearch(const Graph& host, const Graph& pattern, ModelKind kind, long long budget)
      : host_(host), pattern_(pattern), kind_(kind), budget_(budget) {
    const int k = pattern_.vertex_count();
    order_.resize(k);
    for (int i = 0; i < k; ++i) order_[i] = i;
    std::sort(order_.begin(), order_.end(), [this](int a, int b) {
      if (pattern_.degree(a) != pattern_.degree(b)) return pattern_.degree(a) > pattern_.degree(b);
      return a < b;
    });
    free_.assign(host_.vertex_count(), 1);
    placed_.resize(k);
  }

  MinorSearchResult run() {
    MinorSearchResult result;
    if (pattern_.vertex_count() == 0) {
      result.verdict = SearchVerdict::found;
      result.model = MinorModel{host_, pattern_, {}, kind_};
      result.nodes_expanded = 0;
      return result;
    }
    if (host_.vertex_count() < pattern_.vertex_count()) {
      result.verdict = SearchVerdict::absent;
      return result;
    }
    bool found = place_slot(0);
    result.nodes_expanded = nodes_;
    if (found) {
      result.verdict = SearchVerdict::found;
      MinorModel m;
      m.host = host_;
      m.pattern = pattern_;
      m.kind = kind_;
      m.branch_sets.resize(pattern_.vertex_count());
      for (int s = 0; s < pattern_.vertex_count(); ++s) {
        m.branch_sets[order_[s]] = placed_[s];
        std::sort(m.branch_sets[order_[s]].begin(), m.branch_sets[order_[s]].end());
      }
      auto check = validate_model(m);
      if (!check.ok) throw std::logic_error("search produced invalid model: " + check.message);
      result.model = std::move(m);
    } else {
      result.verdict = exhausted_ ? SearchVerdict::budget_exhausted : SearchVerdict::absent;
    }
    return result;
  }

 private:
  bool tick() {
    if (++nodes_ >= budget_) {
      exhausted_ = true;
      return false;
    }
    return true;
  }

  int free_count() const {
    int c = 0;
    for (char f : free_) c += f;
    return c;
  }

  // placed-set adjacency constraint for the set being grown at slot `slot`
  // against earlier slot `other`; returns 0 = forbidden, 1 = required,
  // 2 = indifferent.
  int constraint(int slot, int other) const {
    bool edge = pattern_.has_edge(order_[slot], order_[other]);
    if (edge) return 1;
    return kind_ == ModelKind::induced_minor ? 0 : 2;
  }

  bool place_slot(int slot) {
    if (slot == pattern_.vertex_count()) return true;
    // every remaining pattern vertex still needs a fresh host vertex
    std::vector<int> roots;
    for (int v = 0; v < host_.vertex_count(); ++v)
      if (free_[v]) roots.push_back(v);
    if (static_cast<int>(roots.size()) < pattern_.vertex_count() - slot) return false;
    for (int root : roots) {
      if (!free_[root]) continue;  // may have been consumed deeper... defensive; sets restore
      std::vector<char> banned(host_.vertex_count(), 0);
      for (int v : roots) {
        if (v == root) break;
        banned[v] = 1;  // sets containing a smaller free vertex are rooted there
      }
      std::vector<int> set;
      std::vector<char> touches(slot, 0);
      if (grow(slot, root, set, banned, touches)) return true;
      if (exhausted_) return false;
    }
    return false;
  }

  // Enumerate connected supersets of `set` (rooted at its smallest vertex)
  // by extending with non-banned free neighbors; each extension bans the
  // candidates skipped before it, so every connected set appears once.
  bool grow(int slot, int add, std::vector<int>& set, std::vector<char>& banned,
            std::vector<char>& touches) {
    if (!tick()) return false;
    set.push_back(add);
    free_[add] = 0;
    std::vector<int> reverted;
    bool dead = false;
    for (int s = 0; s < slot && !dead; ++s) {
      if (touches[s]) continue;
      for (int w : host_.neighbors(add)) {
        if (std::find(placed_[s].begin(), placed_[s].end(), w) != placed_[s].end()) {
          if (constraint(slot, s) == 0) dead = true;  // forbidden contact can never be undone
          touches[s] = 1;
          reverted.push_back(s);
          break;
        }
      }
    }
    if (!dead) {
      // try to finalize this branch set
      bool ok = true;
      for (int s = 0; s < slot && ok; ++s)
        if (constraint(slot, s) == 1 && !touches[s]) ok = false;
      if (ok && free_count() >= pattern_.vertex_count() - slot - 1) {
        placed_[slot] = set;
        if (place_slot(slot + 1)) return true;
        placed_[slot].clear();
        if (exhausted_) {
          for (int s : reverted) touches[s] = 0;
          free_[add] = 1;
          set.pop_back();
          return false;
        }
      }
      // extend: candidate = free, non-banned neighbor of the current set
      std::vector<int> candidates;
      for (int u : set)
        for (int w : host_.neighbors(u))
          if (free_[w] && !banned[w]) candidates.push_back(w);
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      std::vector<int> newly_banned;
      for (int w : candidates) {
        if (grow(slot, w, set, banned, touches)) return true;
        if (exhausted_) break;
        banned[w] = 1;  // later sets in this subtree must not contain w
        newly_banned.push_back(w);
      }
      for (int w : newly_banned) banned[w] = 0;
    }
    for (int s : reverted) touches[s] = 0;
    free_[add] = 1;
    set.pop_back();
    return false;
  }

  const Graph& host_;
  const Graph& pattern_;
  ModelKind kind_;
  long long budget_;
  long long nodes_ = 0;
  bool exhausted_ = false;
  std::vector<int> order_;
  std::vector<char> free_;
  std::vector<std::vector<int>> placed_;
};

}  // namespace detail

/// Three-valued exhaustive search: a validated model, a verified-absent
/// verdict, or budget exhaustion.  Budget counts expanded search nodes.
inline MinorSearchResult find_induced_minor(const Graph& host, const Graph& pattern,
                                            long long budget = 10'000'000) {
  return detail::MinorSearch(host, pattern, ModelKind::induced_minor, budget).run();
}

inline MinorSearchResult find_minor(const Graph& host, const Graph& pattern,
                                    long long budget = 10'000'000) {
  return detail::MinorSearch(host, pattern, ModelKind::minor, budget).run();
}

}  // namespace gdtk
