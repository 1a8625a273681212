#pragma once

// Slow, direct reference implementations used to cross-check the library.
// Nothing here calls into stpnet beyond reading matrix entries.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stpnet/boolean_matrix.hpp"
#include "stpnet/logical_matrix.hpp"

namespace oracle {

using Dense = std::vector<std::vector<long long>>;

inline Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<long long>(c, 0)); }

inline Dense eye(std::size_t n) {
    Dense d = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 1;
    return d;
}

inline Dense dense(const stpnet::LogicalMatrix& m) {
    Dense d = zeros(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) d[m.index(j)][j] = 1;
    return d;
}

inline Dense dense(const stpnet::BooleanMatrix& m) {
    Dense d = zeros(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m.get(i, j);
    return d;
}

inline Dense mul(const Dense& a, const Dense& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Dense c = zeros(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t)
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    return c;
}

inline Dense kron(const Dense& a, const Dense& b) {
    const std::size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
    Dense c = zeros(ar * br, ac * bc);
    for (std::size_t i = 0; i < ar; ++i)
        for (std::size_t j = 0; j < ac; ++j)
            for (std::size_t p = 0; p < br; ++p)
                for (std::size_t q = 0; q < bc; ++q) c[i * br + p][j * bc + q] = a[i][j] * b[p][q];
    return c;
}

// Left semi-tensor product by its definition.
inline Dense stp(const Dense& a, const Dense& b) {
    const std::size_t n = a[0].size(), p = b.size();
    const std::size_t t = std::lcm(n, p);
    return mul(kron(a, eye(t / n)), kron(b, eye(t / p)));
}

inline Dense boolize(Dense d) {
    for (auto& row : d)
        for (auto& v : row) v = v != 0;
    return d;
}

inline long long trace(const Dense& d) {
    long long s = 0;
    for (std::size_t i = 0; i < d.size(); ++i) s += d[i][i];
    return s;
}

inline bool edge(const stpnet::BooleanMatrix& M, std::size_t from, std::size_t to) { return M.get(to, from); }

// Rotation classes of closed walks with minimal period exactly s, found by
// walking the graph and keeping each walk only in its least rotation.
inline long long cycles_of_length(const stpnet::BooleanMatrix& M, std::size_t s) {
    const std::size_t n = M.rows();
    long long count = 0;
    std::vector<std::size_t> walk;
    std::function<void(std::size_t)> go = [&](std::size_t start) {
        if (walk.size() == s) {
            if (!edge(M, walk.back(), start)) return;
            for (std::size_t r = 1; r < s; ++r) {
                std::vector<std::size_t> rot(walk.begin() + r, walk.end());
                rot.insert(rot.end(), walk.begin(), walk.begin() + r);
                if (rot <= walk) return;  // a smaller rotation exists, or a shorter period
            }
            ++count;
            return;
        }
        for (std::size_t v = start; v < n; ++v)
            if (edge(M, walk.back(), v)) {
                walk.push_back(v);
                go(start);
                walk.pop_back();
            }
    };
    for (std::size_t v = 0; v < n; ++v) {
        walk = {v};
        go(v);
    }
    return count;
}

// Elementary circuits, each listed from its smallest state.
inline std::set<std::vector<std::size_t>> simple_cycles(const stpnet::BooleanMatrix& M) {
    const std::size_t n = M.rows();
    std::set<std::vector<std::size_t>> out;
    std::vector<std::size_t> path;
    std::vector<bool> used(n, false);
    std::function<void(std::size_t)> go = [&](std::size_t start) {
        if (edge(M, path.back(), start)) out.insert(path);
        for (std::size_t v = start + 1; v < n; ++v)
            if (!used[v] && edge(M, path.back(), v)) {
                used[v] = true;
                path.push_back(v);
                go(start);
                path.pop_back();
                used[v] = false;
            }
    };
    for (std::size_t v = 0; v < n; ++v) {
        path = {v};
        used.assign(n, false);
        used[v] = true;
        go(v);
    }
    return out;
}

// reach[i][j]: j reaches i in one or more steps.
inline Dense bfs_closure(const stpnet::BooleanMatrix& M) {
    const std::size_t n = M.rows();
    Dense r = zeros(n, n);
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<bool> seen(n, false);
        std::queue<std::size_t> q;
        for (std::size_t v = 0; v < n; ++v)
            if (edge(M, s, v) && !seen[v]) seen[v] = true, q.push(v);
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (std::size_t v = 0; v < n; ++v)
                if (edge(M, u, v) && !seen[v]) seen[v] = true, q.push(v);
        }
        for (std::size_t v = 0; v < n; ++v) r[v][s] = seen[v];
    }
    return r;
}

inline stpnet::BooleanMatrix random_boolean(std::mt19937_64& rng, std::size_t r, std::size_t c, double density) {
    std::bernoulli_distribution bit(density);
    stpnet::BooleanMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (bit(rng)) m.set(i, j);
    return m;
}

inline stpnet::LogicalMatrix random_logical(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<std::size_t> row(0, r - 1);
    std::vector<std::size_t> idx(c);
    for (auto& v : idx) v = row(rng);
    return stpnet::LogicalMatrix(r, idx);
}

// Random Boolean formula kept as a small tree so the test can both print it
// in model syntax and evaluate it with ordinary bool arithmetic.
struct Formula {
    char op = 'v';  // v var, c const, ! & | ^ = (iff) > (implies)
    std::size_t var = 0;
    bool value = false;
    std::vector<Formula> kids;

    bool eval(const std::vector<bool>& x) const {
        switch (op) {
        case 'v': return x[var];
        case 'c': return value;
        case '!': return !kids[0].eval(x);
        case '&': return kids[0].eval(x) && kids[1].eval(x);
        case '|': return kids[0].eval(x) || kids[1].eval(x);
        case '^': return kids[0].eval(x) != kids[1].eval(x);
        case '=': return kids[0].eval(x) == kids[1].eval(x);
        default: return !kids[0].eval(x) || kids[1].eval(x);
        }
    }

    std::string text(const std::vector<std::string>& names) const {
        switch (op) {
        case 'v': return names[var];
        case 'c': return value ? "1" : "0";
        case '!': return "!(" + kids[0].text(names) + ")";
        default: {
            const std::string sym = op == '=' ? "<->" : op == '>' ? "->" : std::string(1, op);
            return "(" + kids[0].text(names) + " " + sym + " " + kids[1].text(names) + ")";
        }
        }
    }
};

inline Formula random_formula(std::mt19937_64& rng, std::size_t vars, int depth) {
    Formula f;
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 7 : 1);
    const int k = pick(rng);
    if (k == 0 || (k == 1 && depth > 0 && rng() % 4)) {
        f.op = 'v';
        f.var = std::uniform_int_distribution<std::size_t>(0, vars - 1)(rng);
    } else if (k == 1) {
        f.op = 'c';
        f.value = rng() & 1;
    } else {
        static const char ops[] = {'!', '&', '|', '^', '=', '>'};
        f.op = ops[k - 2];
        f.kids.push_back(random_formula(rng, vars, depth - 1));
        if (f.op != '!') f.kids.push_back(random_formula(rng, vars, depth - 1));
    }
    return f;
}

// Joint-state index with true = first position and the first variable most
// significant.
inline std::size_t encode(const std::vector<bool>& x) {
    std::size_t idx = 0;
    for (bool b : x) idx = idx * 2 + (b ? 0 : 1);
    return idx;
}

inline std::vector<bool> decode(std::size_t idx, std::size_t width) {
    std::vector<bool> x(width);
    for (std::size_t i = width; i-- > 0; idx /= 2) x[i] = idx % 2 == 0;
    return x;
}

// Output-class transition relation of a system given by successor sets.
// Key: (class, input) -> set of classes.
inline std::map<std::pair<std::size_t, std::size_t>, std::set<std::size_t>>
class_relation(const stpnet::BooleanMatrix& L, const std::vector<std::size_t>& h, std::size_t inputs) {
    const std::size_t n = L.rows();
    std::map<std::pair<std::size_t, std::size_t>, std::set<std::size_t>> rel;
    for (std::size_t u = 0; u < inputs; ++u)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (L.get(y, u * n + x)) rel[{h[x], u}].insert(h[y]);
    return rel;
}

} // namespace oracle

namespace oracle {

// Closed walks of length s, counted by walking every path.
inline long long closed_walks(const stpnet::BooleanMatrix& M, std::size_t s) {
    const std::size_t n = M.rows();
    long long count = 0;
    std::function<void(std::size_t, std::size_t, std::size_t)> go = [&](std::size_t start, std::size_t at,
                                                                         std::size_t left) {
        if (left == 0) {
            count += at == start;
            return;
        }
        for (std::size_t v = 0; v < n; ++v)
            if (edge(M, at, v)) go(start, v, left - 1);
    };
    for (std::size_t v = 0; v < n; ++v) go(v, v, s);
    return count;
}

} // namespace oracle
