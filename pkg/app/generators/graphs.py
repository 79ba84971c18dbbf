"""
Symmetric jump kernels p(x, y) for SEP on a site graph.

Bulk sites are numbered 0..B-1 and reservoir sites follow them.
"""

from fractions import Fraction

from app.utils.errors import ParameterError


class GraphRates:
    def __init__(self, n_sites, rates):
        self.n_sites = n_sites
        self.rates = {}
        for (x, y), value in rates.items():
            if x == y or value == 0:
                continue
            if not (0 <= x < n_sites and 0 <= y < n_sites):
                raise ParameterError(f"Edge ({x}, {y}) outside {n_sites} sites")
            if value < 0:
                raise ParameterError(f"Negative rate p({x}, {y}) = {value}")
            self.rates[(x, y)] = value
        for (x, y), value in self.rates.items():
            if self.rates.get((y, x)) != value:
                raise ParameterError(f"p is not symmetric at ({x}, {y})")

    def __call__(self, x, y):
        return self.rates.get((x, y), 0)

    def edges(self):
        """Unordered edges x < y with their rate"""
        return [(x, y, v) for (x, y), v in sorted(self.rates.items()) if x < y]

    def neighbours(self, x):
        return [(y, v) for (a, y), v in sorted(self.rates.items()) if a == x]


def path_graph(n_sites, rate=Fraction(1)):
    """Nearest-neighbour kernel on a segment"""
    rates = {}
    for x in range(n_sites - 1):
        rates[(x, x + 1)] = rate
        rates[(x + 1, x)] = rate
    return GraphRates(n_sites, rates)


def complete_graph(n_sites, rate=Fraction(1)):
    rates = {(x, y): rate for x in range(n_sites) for y in range(n_sites) if x != y}
    return GraphRates(n_sites, rates)


def with_reservoirs(graph, links):
    """
    Extend a bulk kernel by reservoir sites.

    Args:
        graph: GraphRates over the bulk sites
        links: one dict per reservoir, bulk site -> rate

    Returns:
        GraphRates whose reservoir sites are numbered after the bulk
    """
    rates = dict(graph.rates)
    for r, link in enumerate(links):
        site = graph.n_sites + r
        for x, value in link.items():
            rates[(site, x)] = value
            rates[(x, site)] = value
    return GraphRates(graph.n_sites + len(links), rates)


def unfuse_graph(graph, m):
    """
    Kernel on unit sites: every site x of capacity m_x becomes m_x unit
    sites and p_unit(u, v) = p(x, y) / (m_x m_y). Reservoir sites beyond the
    bulk keep a single unit site with capacity factor 1.
    """
    sizes = list(m) + [1] * (graph.n_sites - len(m))
    first = []
    total = 0
    for size in sizes:
        first.append(total)
        total += size
    rates = {}
    for (x, y), value in graph.rates.items():
        scaled = Fraction(value) / (sizes[x] * sizes[y])
        for u in range(first[x], first[x] + sizes[x]):
            for v in range(first[y], first[y] + sizes[y]):
                rates[(u, v)] = scaled
    return GraphRates(total, rates)
