"""Graph and cover generators shared by the test modules."""
from pathlib import Path

import numpy as np

from fuzzyov import Community, Cover, Graph, load_edge_list, read_cover, read_edge_list

DATA = Path(__file__).parent / "data"

BARBELL = "1 2\n1 3\n2 3\n4 5\n4 6\n5 6\n3 4\n"


def barbell():
    return load_edge_list(BARBELL)


def karate():
    return read_edge_list(DATA / "karate.txt")


def karate_split():
    return read_cover(DATA / "karate_club_split.txt")


def random_graph(rng, n, p, weighted=False):
    """G(n, p) on labels "0".."n-1"; redrawn until it has an edge and no isolated node."""
    while True:
        iu, iv = np.triu_indices(n, 1)
        keep = rng.random(iu.size) < p
        u, v = iu[keep], iv[keep]
        if u.size and np.all(np.bincount(np.concatenate([u, v]), minlength=n) > 0):
            break
    w = rng.uniform(0.5, 3.0, u.size) if weighted else None
    return Graph.from_edges([str(i) for i in range(n)], u, v, w)


def random_crisp_cover(rng, g, n_com, max_overlap=2):
    """Every node joins 1..max_overlap random communities; empty communities are dropped."""
    groups = [[] for _ in range(n_com)]
    for label in g.labels:
        k = int(rng.integers(1, max_overlap + 1))
        for c in rng.choice(n_com, size=min(k, n_com), replace=False):
            groups[int(c)].append(label)
    return Cover.crisp([grp for grp in groups if grp])


def random_partition(rng, g, n_com):
    groups = [[] for _ in range(n_com)]
    for label in g.labels:
        groups[int(rng.integers(n_com))].append(label)
    return Cover.crisp([grp for grp in groups if grp])


def random_fuzzy_cover(rng, g, n_com, max_overlap=3):
    """Row-stochastic coefficients over a random subset of communities per node."""
    groups = [{} for _ in range(n_com)]
    for label in g.labels:
        k = int(rng.integers(1, min(max_overlap, n_com) + 1))
        comms = rng.choice(n_com, size=k, replace=False)
        coef = rng.dirichlet(np.ones(k))
        coef = coef / coef.sum()
        for c, a in zip(comms, coef):
            groups[int(c)][label] = float(a)
    return Cover(tuple(Community(i, grp) for i, grp in enumerate(grp for grp in groups if grp)), "fuzzy")


def small_graphs():
    """Fixture set of 24 graphs with at most 8 nodes (named shapes plus seeded G(n,p))."""
    named = [
        BARBELL,
        "a b\nb c\nc d\nd e\n",  # path
        "h x1\nh x2\nh x3\nh x4\nh x5\n",  # star
        "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n",  # K4
        "1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n",  # C6
        "1 2\n1 3\n2 3\n3 4\n4 5\n4 6\n5 6\n6 7\n",  # triangles plus pendant
        "1 2 2.5\n1 3 0.5\n2 3 1\n4 5 3\n4 6 1\n5 6 1\n3 4 0.25\n",  # weighted barbell
        "1 2\n2 3\n3 1\n4 5\n5 6\n6 4\n7 8\n",  # disconnected pieces
    ]
    graphs = [load_edge_list(t) for t in named]
    rng = np.random.default_rng(20240601)
    while len(graphs) < 24:
        n = int(rng.integers(4, 9))
        graphs.append(random_graph(rng, n, 0.45, weighted=len(graphs) % 3 == 0))
    return graphs
