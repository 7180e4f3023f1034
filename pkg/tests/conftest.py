import pytest

from pathprob import AlgebraContext, Graph, Mode


def one_loop():
    """Single vertex with one loop edge."""
    return Graph(["v"], [("l", "v", "v")])


def single_edge():
    """Two vertices joined by one edge."""
    return Graph(["v1", "v2"], [("e", "v1", "v2")])


def flower(n=2):
    """One vertex with n loop edges (a, b, ...)."""
    names = ["a", "b", "c", "d"][:n]
    return Graph(["v"], [(x, "v", "v") for x in names])


def circulant(n=3):
    """Directed n-cycle: e_j from v_j to v_{j+1}."""
    vs = [f"v{j}" for j in range(1, n + 1)]
    es = [(f"e{j}", f"v{j}", f"v{j % n + 1}") for j in range(1, n + 1)]
    return Graph(vs, es)


def two_cycle():
    """Two vertices with edges both ways; e1.e2 is a basic loop."""
    return Graph(["v1", "v2"], [("e1", "v1", "v2"), ("e2", "v2", "v1")])


def all_paths(graph, max_len):
    """Every admissible path of length 1..max_len, deterministic order."""
    from pathprob import concat

    out = [graph.path(e) for e in graph.edge_ids]
    frontier = list(out)
    for _ in range(max_len - 1):
        nxt = []
        for p in frontier:
            for e in graph.edge_ids:
                q = concat(p, graph.path(e))
                if q is not None:
                    nxt.append(q)
        out.extend(nxt)
        frontier = nxt
    return out


@pytest.fixture
def loop_graph():
    return one_loop()


@pytest.fixture
def edge_graph():
    return single_edge()


@pytest.fixture
def flower_graph():
    return flower()


@pytest.fixture
def loop_paper(loop_graph):
    return AlgebraContext(loop_graph, Mode.PAPER)


@pytest.fixture
def loop_vacuum(loop_graph):
    return AlgebraContext(loop_graph, Mode.VACUUM)
