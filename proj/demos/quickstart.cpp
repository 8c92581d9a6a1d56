#include <iostream>

#include "addspan/addspan.hpp"

int main() {
    using namespace addspan;

    const Graph g = generate(Family::gnm, {.n = 300, .m = 6000}, 42);

    const auto two = build_2_spanner(g);
    const auto eight = build_8_spanner(g);
    std::cout << "graph:      n=" << g.num_nodes() << " m=" << g.num_edges() << '\n'
              << "2-spanner:  " << two.spanner.num_edges() << " edges\n"
              << "8-spanner:  " << eight.spanner.num_edges() << " edges (" << eight.clustering.num_clusters()
              << " clusters, " << eight.buy.edges_added << " bought)\n";

    const auto rep = verify::check_stretch(g, eight.spanner, 8);
    std::cout << "max additive stretch: " << rep.find("additive_stretch")->observed
              << (rep.passed() ? " (ok)" : " (FAILED)") << '\n';

    const auto oracle = build_oracle(eight);
    const auto exact = bfs_distances(g, 0);
    for (NodeId v : {1u, 17u, 150u, 299u}) {
        std::cout << "d(0," << v << ") = " << exact[v] << ", oracle says " << oracle.query(0, v) << '\n';
    }
    return rep.passed() ? 0 : 1;
}
