import json
import math

import numpy as np
import pytest

import icc

# BODY-25 figure facing right, in head units relative to the neck
FIGURE = {
    0: (0.35, -1.0), 1: (0.0, 0.0), 2: (0.0, 0.05), 5: (0.0, -0.05),
    3: (0.4, 1.0), 4: (0.8, 1.6), 6: (0.4, 1.0), 7: (0.8, 1.6),
    8: (0.0, 3.0), 9: (0.0, 3.1), 12: (0.0, 2.9),
    10: (0.2, 4.6), 13: (0.2, 4.6), 11: (0.0, 6.2), 14: (0.0, 6.2),
}


def person(neck, scale, facing):
    p = np.zeros((25, 3))
    for joint, (x, y) in FIGURE.items():
        p[joint] = (neck[0] + facing * x * scale, neck[1] + y * scale, 0.9)
    return p


def facing_pair(w=120, h=160):
    people = np.stack([person((0.25 * w, 0.15 * h), 7, 1), person((0.75 * w, 0.15 * h), 7, -1)])
    image = np.zeros((h, w, 3), np.uint8)
    image[: h // 2] = (150, 190, 230)
    image[h // 2 :] = (90, 120, 60)
    for p in people:
        for x, y, _ in p[[0, 1, 4, 8, 11]]:
            image[max(0, int(y) - 3) : int(y) + 3, max(0, int(x) - 3) : int(x) + 3] = (40, 30, 30)
    return image, people


def test_geometry():
    hull = icc.convex_hull([(0, 0), (4, 0), (4, 3), (0, 3), (2, 1)])
    assert len(hull) == 4
    area, centroid = icc.area_centroid(hull)
    assert area == pytest.approx(12)
    assert centroid == pytest.approx((2, 1.5))
    assert icc.hausdorff([(0, 0)], [(3, 4)]) == 5
    assert icc.clip_convex([(0, 0), (1, 0), (1, 1)], [(5, 5), (6, 5), (6, 6)]) is None
    sector = icc.sector_polygon((0, 0), 0.0, 25.0, 100.0)
    assert len(sector) == 12


def test_gaze_and_regions():
    a = person((30, 30), 10, 1)
    (origin, direction) = icc.gaze_vector(a)
    assert origin == pytest.approx((30, 30))
    assert -90 < direction < 90
    assert icc.aggregate_slope([10.0, -170.0]) == pytest.approx(10.0)
    regions = icc.intersect_cones([((0, 0), 0.0), ((100, 0), 180.0)], opening=50, radius=500)
    assert len(regions) == 1
    assert regions[0]["centroid"][0] == pytest.approx(50)
    assert regions[0]["pairs"] == [(0, 1)]
    missing = a.copy()
    missing[8] = 0
    assert icc.gaze_vector(missing) is None


def test_imaging():
    img = np.zeros((20, 30, 3), np.uint8)
    img[:, 15:] = (200, 100, 50)
    assert np.array_equal(icc.median_filter(img, 3), img)
    palette, labels, history = icc.kmeans(img, k=3, seed=1)
    assert labels.shape == (20, 30)
    assert len(palette) == 2
    assert history[-1] == 0
    mask = np.zeros((20, 30), np.uint8)
    mask[5:8, 2:5] = 1
    out = icc.inpaint(img, mask)
    assert np.array_equal(out[mask == 0], img[mask == 0])
    with pytest.raises(icc.InpaintUnderconstrained):
        icc.inpaint(img, np.ones((20, 30), np.uint8))


def test_pipeline_and_evaluation():
    image, people = facing_pair()
    out = icc.compose(image, people, image_id="pair", median_kernel=3, bilateral_diameter=5)
    result = out["result"]
    assert result["image_id"] == "pair"
    assert len(result["action_regions"]) == 1
    assert out["colored_icc"].shape == image.shape
    assert out["binary_canvas"].shape == image.shape[:2]
    again = icc.compose(image, people, image_id="pair", median_kernel=3, bilateral_diameter=5)
    assert np.array_equal(again["colored_icc"], out["colored_icc"])

    w, h = result["width"], result["height"]
    # regions may extend past the image; annotations may not
    ars = [[min(1.0, r["centroid"][0] / w), min(1.0, r["centroid"][1] / h)] for r in result["action_regions"]]
    annotations = {
        "image_id": "pair",
        "annotators": [
            {"annotator_id": "e1", "expert": True, "action_regions": ars, "action_lines": []},
            {"annotator_id": "n1", "expert": False, "action_regions": ars, "action_lines": []},
        ],
    }
    report = icc.evaluate(annotations, result)
    assert report["l2_e_ne"] == pytest.approx(0)
    assert report["hd_all_icc"] is None


def test_errors():
    with pytest.raises(icc.ParseError):
        icc.parse_keypoints("{")
    image, people = facing_pair()
    with pytest.raises(icc.InvalidParameter):
        icc.compose(image, people, k=1)
    with pytest.raises(icc.SchemaError):
        icc.compose(image, people, cone_openin=3)
    with pytest.raises(icc.InvalidParameter):
        icc.compose(image[:, :, :2], people)
    assert issubclass(icc.SchemaError, icc.Error)
    assert icc.__version__ == "0.1.0"
