#include "nullcert/sequencing.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <thread>

#include "nullcert/errors.hpp"

namespace nullcert {

Subset make_subset(const SemidirectGroup& g, std::vector<GroupElement> elems) {
  std::vector<GroupElement> sorted = elems;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("subset: elements must be distinct");
  for (const auto& e : elems) {
    if (!g.is_valid(e)) throw std::invalid_argument("subset: element not in group");
    if (e == g.identity())
      throw std::invalid_argument("subset: identity is excluded");
  }
  return Subset{std::move(elems)};
}

Subset parse_subset(const SemidirectGroup& g, const std::string& text) {
  std::vector<GroupElement> elems;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dot = item.find('.');
    if (dot == std::string::npos)
      throw std::invalid_argument("subset: expected x.a entries, got '" + item + "'");
    GroupElement e;
    e.x = std::stoull(item.substr(0, dot));
    e.a = std::stoi(item.substr(dot + 1));
    elems.push_back(e);
  }
  return make_subset(g, std::move(elems));
}

std::string format_subset(const Subset& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.elements.size(); ++i) {
    if (i) os << ",";
    os << s.elements[i].x << "." << s.elements[i].a;
  }
  return os.str();
}

QuotientSequencing QuotientSequencing::from_arrangement(
    const FiniteGroupTable& h, std::vector<int> a) {
  QuotientSequencing q;
  q.b.push_back(h.identity);
  for (int ai : a) {
    if (ai < 0 || ai >= h.order)
      throw std::invalid_argument("quotient sequencing: index outside H");
    q.b.push_back(h.mul(q.b.back(), ai));
  }
  q.a = std::move(a);
  return q;
}

std::vector<GroupElement> partial_sums(const SemidirectGroup& g,
                                       const Ordering& ordering) {
  std::vector<GroupElement> s;
  s.reserve(ordering.size() + 1);
  s.push_back(g.identity());
  for (const auto& x : ordering) s.push_back(g.multiply(s.back(), x));
  return s;
}

bool is_linear_sequencing(const SemidirectGroup& g, const Ordering& ordering) {
  auto s = partial_sums(g, ordering);
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

bool is_cyclic_sequencing(const SemidirectGroup& g, const Ordering& ordering) {
  auto s = partial_sums(g, ordering);
  if (s.back() != g.identity()) return false;
  s.pop_back();
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

bool is_t_weak_sequencing(const SemidirectGroup& g, const Ordering& ordering,
                          int t) {
  int k = (int)ordering.size();
  if (t < 1 || t > k)
    throw std::invalid_argument("is_t_weak_sequencing: need 1 <= t <= k");
  auto s = partial_sums(g, ordering);
  for (int i = 0; i <= k; ++i)
    for (int j = i + 1; j <= k && j - i <= t; ++j)
      if (s[i] == s[j]) return false;
  return true;
}

TypeVector subset_type(const SemidirectGroup& g, const Subset& s) {
  TypeVector lambda(g.coset_count(), 0);
  for (const auto& e : s.elements) lambda[e.a]++;
  return lambda;
}

bool is_quotient_sequencing(const FiniteGroupTable& h,
                            const std::vector<int>& arrangement, int r) {
  auto q = QuotientSequencing::from_arrangement(h, arrangement);
  std::vector<int> counts(h.order, 0);
  for (int bi : q.b) counts[bi]++;
  return std::all_of(counts.begin(), counts.end(),
                     [r](int c) { return c <= r; });
}

namespace {

// Backtracking over positions; `window` = how many trailing sums must stay
// distinct (k+1 for linear, k for cyclic-tolerant, t for weak).
struct BacktrackState {
  const SemidirectGroup& g;
  std::vector<GroupElement> pool;  // canonical sorted order
  std::vector<bool> used;
  Ordering current;
  std::vector<GroupElement> sums;
  int window;
  bool require_last_identity_distinct;  // forbid s_k == s_0 too (linear)

  bool run(std::optional<Ordering>& out) {
    int k = (int)pool.size();
    if ((int)current.size() == k) {
      out = current;
      return true;
    }
    for (int i = 0; i < k; ++i) {
      if (used[i]) continue;
      GroupElement next = g.multiply(sums.back(), pool[i]);
      int j = (int)sums.size();  // index of the new sum
      bool ok = true;
      for (int d = 1; d <= window && j - d >= 0; ++d)
        if (sums[j - d] == next) {
          ok = false;
          break;
        }
      if (ok) {
        used[i] = true;
        current.push_back(pool[i]);
        sums.push_back(next);
        if (run(out)) return true;
        sums.pop_back();
        current.pop_back();
        used[i] = false;
      }
    }
    return false;
  }
};

std::optional<Ordering> backtrack(const SemidirectGroup& g, const Subset& s,
                                  int window) {
  BacktrackState st{g, s.elements, {}, {}, {}, window, false};
  std::sort(st.pool.begin(), st.pool.end());
  st.used.assign(st.pool.size(), false);
  st.sums.push_back(g.identity());
  std::optional<Ordering> out;
  st.run(out);
  return out;
}

}  // namespace

std::optional<Ordering> brute_force_sequence(const SemidirectGroup& g,
                                             const Subset& s, OracleMode mode,
                                             int cap) {
  int k = s.k();
  if (k > cap)
    throw std::invalid_argument("brute_force_sequence: subset exceeds the oracle cap");
  switch (mode.kind) {
    case OracleMode::linear:
      return backtrack(g, s, k + 1);
    case OracleMode::any:
      // a (k-1)-weak sequencing is exactly a linear or cyclic sequencing:
      // only the pair s_0, s_k may coincide
      return backtrack(g, s, k - 1);
    case OracleMode::t_weak: {
      if (mode.t < 1 || mode.t > k)
        throw std::invalid_argument("brute_force_sequence: t out of range");
      return backtrack(g, s, mode.t);
    }
  }
  return std::nullopt;
}

std::vector<Subset> subsets_of_type(const SemidirectGroup& g,
                                    const TypeVector& lambda,
                                    std::uint64_t budget) {
  if ((int)lambda.size() != g.coset_count())
    throw std::invalid_argument("subsets_of_type: lambda length must be |H|");
  // per-coset candidate values
  std::vector<std::vector<std::uint64_t>> values(g.coset_count());
  for (int a = 0; a < g.coset_count(); ++a) {
    for (std::uint64_t x = 0; x < g.p(); ++x) {
      GroupElement e{x, a};
      if (e == g.identity()) continue;
      values[a].push_back(x);
    }
    if (lambda[a] > (int)values[a].size())
      throw std::invalid_argument("subsets_of_type: lambda exceeds coset size");
  }
  // count = prod C(|coset|, lambda_a)
  auto choose = [](std::uint64_t n, std::uint64_t r) {
    unsigned __int128 c = 1;
    for (std::uint64_t i = 0; i < r; ++i) c = c * (n - i) / (i + 1);
    return (std::uint64_t)c;
  };
  std::uint64_t total = 1;
  for (int a = 0; a < g.coset_count(); ++a)
    total *= choose(values[a].size(), lambda[a]);
  if (total > budget)
    throw BudgetExceeded("subsets_of_type: enumeration budget exceeded");

  // enumerate coset-wise combinations
  std::vector<Subset> out;
  out.reserve(total);
  std::vector<std::vector<std::uint64_t>> chosen(g.coset_count());
  std::vector<std::vector<int>> combo(g.coset_count());

  // iterative product of combinations per coset
  std::vector<std::vector<std::vector<std::uint64_t>>> per_coset(g.coset_count());
  for (int a = 0; a < g.coset_count(); ++a) {
    std::vector<int> idx(lambda[a]);
    for (int i = 0; i < lambda[a]; ++i) idx[i] = i;
    const auto& vals = values[a];
    if (lambda[a] == 0) {
      per_coset[a].push_back({});
      continue;
    }
    while (true) {
      std::vector<std::uint64_t> pick(lambda[a]);
      for (int i = 0; i < lambda[a]; ++i) pick[i] = vals[idx[i]];
      per_coset[a].push_back(std::move(pick));
      int i = lambda[a] - 1;
      while (i >= 0 && idx[i] == (int)vals.size() - lambda[a] + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < lambda[a]; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  std::vector<std::size_t> cursor(g.coset_count(), 0);
  while (true) {
    std::vector<GroupElement> elems;
    for (int a = 0; a < g.coset_count(); ++a)
      for (auto x : per_coset[a][cursor[a]]) elems.push_back({x, a});
    out.push_back(Subset{std::move(elems)});
    int a = g.coset_count() - 1;
    while (a >= 0 && cursor[a] + 1 == per_coset[a].size()) {
      cursor[a] = 0;
      --a;
    }
    if (a < 0) break;
    ++cursor[a];
  }
  return out;
}

namespace {

// canonical key of a subset: its sorted element list
std::vector<GroupElement> subset_key(const Subset& s) {
  auto v = s.elements;
  std::sort(v.begin(), v.end());
  return v;
}

// true iff s is the lexicographically least member of its orbit under
// (x, a) |-> (c*x, a), c in Z_p^*
bool is_orbit_representative(const SemidirectGroup& g, const Subset& s) {
  auto self = subset_key(s);
  for (std::uint64_t c = 2; c < g.p(); ++c) {
    std::vector<GroupElement> mapped;
    mapped.reserve(s.elements.size());
    for (const auto& e : s.elements)
      mapped.push_back({static_cast<std::uint64_t>(
                            (static_cast<unsigned __int128>(c) * e.x) % g.p()),
                        e.a});
    std::sort(mapped.begin(), mapped.end());
    if (mapped < self) return false;
  }
  return true;
}

}  // namespace

TypeCheckReport exhaustive_type_check(const SemidirectGroup& g,
                                      const TypeVector& lambda, OracleMode mode,
                                      std::uint64_t budget, bool keep_verdicts,
                                      int jobs, bool scaling_reduction) {
  TypeCheckReport rep;
  rep.lambda = lambda;
  rep.mode = mode;
  auto subsets = subsets_of_type(g, lambda, budget);
  if (scaling_reduction) {
    std::vector<Subset> reps;
    for (auto& s : subsets)
      if (is_orbit_representative(g, s)) reps.push_back(std::move(s));
    subsets = std::move(reps);
  }
  rep.total = subsets.size();

  int k = 0;
  for (int c : lambda) k += c;
  auto work = [&](std::size_t begin, std::size_t end, TypeCheckReport& local) {
    for (std::size_t i = begin; i < end; ++i) {
      const Subset& s = subsets[i];
      auto lin = brute_force_sequence(g, s, OracleMode::Linear(), k);
      bool cyc = false;
      if (!lin) {
        auto any = brute_force_sequence(g, s, OracleMode::Any(), k);
        cyc = any && is_cyclic_sequencing(g, *any);
      }
      bool sat = false;
      switch (mode.kind) {
        case OracleMode::linear: sat = lin.has_value(); break;
        case OracleMode::any: sat = lin.has_value() || cyc; break;
        case OracleMode::t_weak:
          sat = brute_force_sequence(g, s, mode, k).has_value();
          break;
      }
      if (lin)
        local.linear++;
      else if (cyc)
        local.cyclic_only++;
      if (sat)
        local.satisfied++;
      else {
        local.unsatisfied++;
        local.failures.push_back({s, lin.has_value(), cyc});
      }
      if (keep_verdicts) local.verdicts.push_back({s, lin.has_value(), cyc});
    }
  };

  jobs = std::max(1, jobs);
  if (jobs == 1 || subsets.size() < 64) {
    work(0, subsets.size(), rep);
  } else {
    std::vector<TypeCheckReport> parts(jobs);
    std::vector<std::thread> threads;
    std::size_t chunk = (subsets.size() + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
      std::size_t b = t * chunk, e = std::min(subsets.size(), b + chunk);
      if (b >= e) break;
      threads.emplace_back(work, b, e, std::ref(parts[t]));
    }
    for (auto& th : threads) th.join();
    for (auto& part : parts) {
      rep.linear += part.linear;
      rep.cyclic_only += part.cyclic_only;
      rep.satisfied += part.satisfied;
      rep.unsatisfied += part.unsatisfied;
      for (auto& f : part.failures) rep.failures.push_back(std::move(f));
      for (auto& v : part.verdicts) rep.verdicts.push_back(std::move(v));
    }
  }
  return rep;
}

}  // namespace nullcert
