import json

from monorm.cli import run
from monorm.gallery import GalleryConfig, gallery_report


def _as_float(x):
    return float("inf") if not x.is_finite else x.value


def test_gallery_trend():
    report = gallery_report(GalleryConfig(resolutions=(256, 1024, 4096)))
    ladder = report["ladder"]
    assert [e["resolution"] for e in ladder] == [256, 1024, 4096]

    # scaling 0 gives modular 0; scalings <= 1 stay bounded for the low function
    for entry in ladder:
        low = entry["modular_low"]
        assert _as_float(low["0"]) == 0.0
        assert _as_float(low["0.5"]) < 1.0
        assert _as_float(low["1"]) <= 1.5

    # above the critical scaling the low-function modular grows along the
    # ladder and ends far beyond 1e3
    blow = [_as_float(e["modular_low"]["1.01"]) for e in ladder]
    assert all(b >= a for a, b in zip(blow, blow[1:]))
    assert blow[-1] > 1e3

    # the high function diverges already at scaling 1 (one unit per block)
    at_one = [_as_float(e["modular_high"]["1"]) for e in ladder]
    blocks = [e["blocks"] for e in ladder]
    for got, want in zip(at_one, blocks):
        assert abs(got - want) <= 1e-6 * want
    assert all(b >= a for a, b in zip(at_one, at_one[1:]))
    # but stays bounded below the critical scaling
    below = [_as_float(e["modular_high"]["0.99"]) for e in ladder]
    assert all(x < 10.0 for x in below)


def test_gallery_command(capsys):
    code = run(["gallery", "--ladder", "64,128", "--json"])
    out = capsys.readouterr().out
    assert code == 0
    report = json.loads(out)
    assert len(report["ladder"]) == 2
    assert report["ladder"][0]["resolution"] == 64
