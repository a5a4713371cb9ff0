#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sparks {

// Independent answer generators for the shipped workloads, written against
// the problem statements rather than the compiled programs.

// Minimum makespan for `a` jobs of length 2 and `b` jobs of length 1 on
// `n` identical machines.
long long brute_makespan(long long a, long long b, long long n);
long long analytic_makespan(long long a, long long b, long long n);

struct graph_instance {
    int n = 0;
    std::vector<std::pair<int, int>> edges;    // i < j
    std::vector<std::pair<int, int>> matching; // subset of edges
};

bool matching_is_valid(const graph_instance& g);
int brute_max_matching(const graph_instance& g);

// 1 when the given matching is not maximum (an augmenting path exists).
int matching_answer(const graph_instance& g);

// A chain-with-tail family: hub 0 joined to 1 and 2, matched rungs
// (2i-1, 2i), link and skip edges along the chain. Even n >= 4; the given
// matching of size (n-2)/2 is never maximum.
graph_instance gen_tr_graph(int n);

// Random graph with a random valid (not necessarily maximal) matching.
graph_instance random_graph_with_matching(int n, uint32_t seed);

// Instance text for the matching workload: one n-by-n 0/1 matrix with the
// adjacency in the strict upper triangle and the matching in the strict
// lower triangle.
std::string graph_to_instance_text(const graph_instance& g);

} // namespace sparks
