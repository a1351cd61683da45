from totalres.samples import data_dir, load_dir, rome_like_samples, small_samples


def edge_set(g):
    return {frozenset(e) for e in g.edge_ids()}


def test_bundled_files_match_generators():
    for sub, graphs in (("small", small_samples()), ("rome_like", rome_like_samples())):
        bundled = dict(load_dir(data_dir(sub)))
        assert bundled.keys() == graphs.keys()
        for name, g in graphs.items():
            assert edge_set(bundled[name]) == edge_set(g), name


def test_rome_like_shape():
    graphs = load_dir(data_dir("rome_like"))
    assert len(graphs) == 20
    for _, g in graphs:
        assert 50 <= g.n_nodes <= 100
        assert abs(g.n_edges - 1.35 * g.n_nodes) <= 1
        # Connected: a spanning tree plus extra edges.
        seen, todo = {0}, [0]
        while todo:
            for v in g.adjacency[todo.pop()]:
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        assert len(seen) == g.n_nodes
