#pragma once

#include <algorithm>
#include <atomic>
#include <future>
#include <stdexcept>
#include <thread>
#include <vector>

namespace taildep {

// Cell-centered uniform mesh: nodes u_i = (i+1/2)/N, v_j = (j+1/2)/N. Nodes
// are strictly interior, so the singular boundary lines of the conditional
// surfaces are never touched.
struct MeshConfig {
    int n_cells = 1000;
    int parallel_chunk = 16;

    void validate() const {
        if (n_cells < 16) throw std::invalid_argument("MeshConfig: n_cells_per_axis >= 16 required");
        if (parallel_chunk < 1) throw std::invalid_argument("MeshConfig: parallel_chunk >= 1 required");
    }

    double node(int i) const { return (i + 0.5) / n_cells; }
};

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Deterministic parallel reduction over mesh rows. Rows are grouped into
// fixed chunks; each chunk accumulates sequentially and chunk results are
// combined with a pairwise tree in chunk order, so the result is bit-stable
// for a given (N, parallel_chunk) regardless of the worker count.
template <class Acc, class RowFn>
Acc mesh_reduce(const MeshConfig& mesh, int threads, RowFn&& row_fn) {
    mesh.validate();
    const int n = mesh.n_cells;
    const int chunk = mesh.parallel_chunk;
    const int n_chunks = (n + chunk - 1) / chunk;
    std::vector<Acc> parts(n_chunks);

    const int workers = std::max(1, std::min(resolve_threads(threads), n_chunks));
    auto run_chunk = [&](int ci) {
        Acc acc;
        const int j0 = ci * chunk;
        const int j1 = std::min(n, j0 + chunk);
        for (int j = j0; j < j1; ++j) row_fn(j, mesh.node(j), acc);
        parts[ci] = std::move(acc);
    };
    if (workers == 1) {
        for (int ci = 0; ci < n_chunks; ++ci) run_chunk(ci);
    } else {
        std::vector<std::future<void>> futs;
        futs.reserve(workers);
        std::atomic<int> next{0};
        for (int w = 0; w < workers; ++w)
            futs.push_back(std::async(std::launch::async, [&]() {
                for (;;) {
                    const int ci = next.fetch_add(1);
                    if (ci >= n_chunks) return;
                    run_chunk(ci);
                }
            }));
        for (auto& f : futs) f.get();
    }
    // pairwise tree combine in fixed chunk order
    std::vector<Acc> level = std::move(parts);
    while (level.size() > 1) {
        std::vector<Acc> up;
        up.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            level[i].combine(level[i + 1]);
            up.push_back(std::move(level[i]));
        }
        if (level.size() % 2 == 1) up.push_back(std::move(level.back()));
        level = std::move(up);
    }
    return std::move(level.front());
}

}  // namespace taildep
