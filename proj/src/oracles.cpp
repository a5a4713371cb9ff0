#include "sparks/oracles.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "sparks/diagnostics.hpp"

namespace sparks {

namespace {

void place_jobs(const std::vector<int>& jobs, size_t idx,
                std::vector<long long>& loads, long long& best) {
    if (idx == jobs.size()) {
        long long mk = *std::max_element(loads.begin(), loads.end());
        best = std::min(best, mk);
        return;
    }
    std::set<long long> tried;
    for (auto& load : loads) {
        if (load + jobs[idx] >= best)
            continue;
        if (!tried.insert(load).second)
            continue;
        load += jobs[idx];
        place_jobs(jobs, idx + 1, loads, best);
        load -= jobs[idx];
    }
}

} // namespace

long long brute_makespan(long long a, long long b, long long n) {
    if (n < 1)
        fail(error_kind::internal, "need at least one machine");
    if (a + b == 0)
        return 0;
    std::vector<int> jobs(static_cast<size_t>(a), 2);
    jobs.insert(jobs.end(), static_cast<size_t>(b), 1);
    std::vector<long long> loads(static_cast<size_t>(n), 0);
    long long best = 2 * a + b;
    place_jobs(jobs, 0, loads, best);
    return best;
}

long long analytic_makespan(long long a, long long b, long long n) {
    long long pairs = 2 * ((a + n - 1) / n);
    long long volume = (2 * a + b + n - 1) / n;
    return std::max(pairs, volume);
}

bool matching_is_valid(const graph_instance& g) {
    std::set<std::pair<int, int>> es(g.edges.begin(), g.edges.end());
    std::vector<uint8_t> used(static_cast<size_t>(g.n), 0);
    for (auto [u, v] : g.matching) {
        if (!es.count({u, v}))
            return false;
        if (used[static_cast<size_t>(u)] || used[static_cast<size_t>(v)])
            return false;
        used[static_cast<size_t>(u)] = used[static_cast<size_t>(v)] = 1;
    }
    return true;
}

namespace {

void grow_matching(const std::vector<std::pair<int, int>>& edges, size_t ei,
                   uint64_t used, int count, int& best) {
    best = std::max(best, count);
    if (ei == edges.size())
        return;
    int remaining = static_cast<int>(edges.size() - ei);
    if (count + remaining <= best)
        return;
    auto [u, v] = edges[ei];
    if (!(used & (1ULL << u)) && !(used & (1ULL << v)))
        grow_matching(edges, ei + 1, used | (1ULL << u) | (1ULL << v),
                      count + 1, best);
    grow_matching(edges, ei + 1, used, count, best);
}

} // namespace

int brute_max_matching(const graph_instance& g) {
    if (g.n > 60)
        fail(error_kind::internal, "graph too large for the brute matcher");
    int best = 0;
    grow_matching(g.edges, 0, 0, 0, best);
    return best;
}

int matching_answer(const graph_instance& g) {
    if (!matching_is_valid(g))
        fail(error_kind::internal, "instance carries an invalid matching");
    return brute_max_matching(g) > static_cast<int>(g.matching.size()) ? 1 : 0;
}

graph_instance gen_tr_graph(int n) {
    if (n < 4 || n % 2 != 0)
        fail(error_kind::internal, "family needs an even n >= 4");
    graph_instance g;
    g.n = n;
    g.edges.push_back({0, 1});
    g.edges.push_back({0, 2});
    for (int i = 1; i <= (n - 2) / 2; ++i) {
        g.edges.push_back({2 * i - 1, 2 * i});
        g.matching.push_back({2 * i - 1, 2 * i});
        if (2 * i + 1 < n) {
            g.edges.push_back({2 * i, 2 * i + 1});
            g.edges.push_back({2 * i - 1, 2 * i + 1});
        }
    }
    return g;
}

graph_instance random_graph_with_matching(int n, uint32_t seed) {
    std::mt19937 rng(seed);
    graph_instance g;
    g.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() & 1)
                g.edges.push_back({i, j});
    std::vector<std::pair<int, int>> pool = g.edges;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<uint8_t> used(static_cast<size_t>(n), 0);
    for (auto [u, v] : pool) {
        if (used[static_cast<size_t>(u)] || used[static_cast<size_t>(v)])
            continue;
        if (rng() % 3 == 0)
            continue;
        used[static_cast<size_t>(u)] = used[static_cast<size_t>(v)] = 1;
        g.matching.push_back({u, v});
    }
    return g;
}

std::string graph_to_instance_text(const graph_instance& g) {
    std::vector<std::vector<uint8_t>> a(
        static_cast<size_t>(g.n), std::vector<uint8_t>(static_cast<size_t>(g.n), 0));
    for (auto [u, v] : g.edges)
        a[static_cast<size_t>(u)][static_cast<size_t>(v)] = 1;
    for (auto [u, v] : g.matching)
        a[static_cast<size_t>(v)][static_cast<size_t>(u)] = 1;
    std::string out = "matrix a[" + std::to_string(g.n) + "," +
                      std::to_string(g.n) + "] <- {\n";
    for (int i = 0; i < g.n; ++i) {
        out += "{";
        for (int j = 0; j < g.n; ++j) {
            out += a[static_cast<size_t>(i)][static_cast<size_t>(j)] ? "1" : "0";
            if (j + 1 < g.n)
                out += ",";
        }
        out += i + 1 < g.n ? "},\n" : "}\n";
    }
    out += "}\n";
    return out;
}

} // namespace sparks
