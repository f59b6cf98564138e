"""Image composition canvases from an image and BODY-25 keypoints."""

import json

from ._core import (
    DegenerateGeometry,
    Error,
    InpaintUnderconstrained,
    InvalidParameter,
    IOError,
    NoForegroundEvidence,
    ParseError,
    SchemaError,
    __version__,
    aggregate_slope,
    area_centroid,
    bilateral_filter,
    clip_convex,
    convex_hull,
    gaze_vector,
    hausdorff,
    inpaint,
    intersect_cones,
    kmeans,
    median_filter,
    parse_keypoints,
    pose_line,
    read_image,
    sector_polygon,
    evaluate as _evaluate,
    run_pipeline as _run_pipeline,
)


def compose(image, people, image_id="image", **config):
    """Run the full pipeline.

    `people` is an N x 25 x 3 array or an OpenPose JSON string. Keyword
    arguments override pipeline parameters; underscores may stand in for
    the hyphens of the configuration keys (``cone_opening=60``).
    """
    if isinstance(people, str):
        people = parse_keypoints(people)
    options = {key.replace("_", "-"): value for key, value in config.items()}
    out = _run_pipeline(image, people, json.dumps(options) if options else "", image_id)
    out["result"] = json.loads(out["result"])
    return out


def evaluate(annotations, result, spacing=1.0):
    """Metrics of a result against annotations; both may be dicts or JSON text."""
    if not isinstance(annotations, str):
        annotations = json.dumps(annotations)
    if not isinstance(result, str):
        result = json.dumps(result)
    return _evaluate(annotations, result, spacing)
