import numpy as np
import pytest

import vfr


def unit_rows(n, d, seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, d)).astype(np.float32)
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def test_index_matches_brute_force_at_full_ef():
    data = unit_rows(300, 16, 1)
    index = vfr.HnswIndex(16, m=8, ef_construction=100)
    index.add(data)
    assert len(index) == 300
    q = unit_rows(1, 16, 2)[0]
    ids, dist = index.knn_search(q, k=5, ef=300)
    bf_ids, bf_dist = vfr.brute_force_knn(data, q, k=5)
    assert list(ids) == list(bf_ids)
    assert np.array_equal(dist, bf_dist)
    sims = data @ q
    assert list(np.argsort(-sims, kind="stable")[:5]) == list(ids)
    assert index.validate() == []


def test_self_query_and_secondary():
    data = unit_rows(200, 12, 3)
    index = vfr.HnswIndex(12)
    index.add(data, ids=list(range(1000, 1200)))
    ids, dist = index.knn_search(data[7], k=1)
    assert ids[0] == 1007 and dist[0] == pytest.approx(0.0, abs=1e-6)
    ids2, _ = index.secondary_search(data[7], k=5, combine=vfr.Combine.And)
    assert ids2[0] == 1007
    with pytest.raises(vfr.DuplicateId):
        index.add(data[:1], ids=[1000])
    with pytest.raises(vfr.DimensionMismatch):
        index.knn_search(np.ones(3, dtype=np.float32))
    with pytest.raises(ValueError):
        index.knn_search(data[0], k=0)


def test_persistence_round_trip(tmp_path):
    data = unit_rows(120, 8, 4)
    lib = vfr.FeatureLibrary([f"p{i // 4}" for i in range(120)], data, manifest="smoke", created_at=5)
    lib.save(tmp_path / "a.flib")
    back = vfr.FeatureLibrary.load(tmp_path / "a.flib")
    assert back == lib and back.label(9) == "p2" and back.created_at == 5
    index = lib.index(m=8, ef_construction=50)
    index.save(tmp_path / "a.hnsw")
    assert vfr.HnswIndex.load(tmp_path / "a.hnsw").structurally_equal(index)
    raw = bytearray((tmp_path / "a.hnsw").read_bytes())
    raw[len(raw) // 2] ^= 0x10
    (tmp_path / "b.hnsw").write_bytes(bytes(raw))
    with pytest.raises(vfr.ChecksumMismatch):
        vfr.HnswIndex.load(tmp_path / "b.hnsw")
    with pytest.raises(vfr.FormatError):
        vfr.HnswIndex.load(tmp_path / "missing.hnsw")


def test_bench_reports():
    data = unit_rows(400, 16, 5)
    lib = vfr.FeatureLibrary([str(i) for i in range(400)], data)
    index = lib.index(m=8, ef_construction=64)
    hnsw, violence = lib.bench(index, frames=10, k=5)
    assert hnsw["mode"] == "hnsw" and violence["mode"] == "violence"
    assert hnsw["mean_ms"] > 0 and violence["recall"] is None
    assert 0.0 <= hnsw["recall"] <= 1.0


def test_geometry():
    anchors = vfr.anchors("faster", 320, 320)
    assert anchors.shape == (16000, 4)
    assert vfr.anchors("baseline", 640, 480).shape[0] == 12600
    boxes = np.array([[0, 0, 10, 10], [1, 1, 11, 11], [20, 20, 30, 30]], dtype=float)
    assert vfr.nms(boxes, [0.9, 0.8, 0.7], 0.4, 0.5) == [0, 2]
    m = vfr.iou(boxes, boxes)
    assert np.allclose(np.diag(m), 1.0) and m[0, 2] == 0.0
    labels = vfr.assign_labels(anchors, np.array([[100, 100, 108, 108]], dtype=float))
    assert (labels == 0).sum() >= 1


def test_image_ops_and_sweep():
    rng = np.random.default_rng(6)
    img = rng.integers(0, 256, size=(20, 24), dtype=np.uint8)
    med = vfr.median_filter(img, 3)
    assert med.shape == img.shape and med.dtype == np.uint8
    pad = np.pad(img, 1, mode="edge")
    assert med[5, 7] == np.median(pad[5:8, 7:10])
    assert vfr.wiener_restore(img).shape == img.shape
    t = vfr.enhance(np.stack([img] * 3, axis=2))
    assert t.shape == (20, 24, 3) and t.dtype == np.float32

    a = unit_rows(50, 8, 7)
    rows = vfr.threshold_sweep(a, a, [True] * 25 + [False] * 25, [0.5])
    assert rows[0]["matched_correct"] == 25 and rows[0]["dismatched_error"] == 25
    rows = vfr.threshold_sweep(a, a, [True] * 50, [0.5], noface=[True] + [False] * 49)
    assert rows[0]["matched_noface"] == 1
