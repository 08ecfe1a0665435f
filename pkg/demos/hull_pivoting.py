"""Vertices of a planar point set by pivoting, checked point by point with an LP.

Run: python3 demos/hull_pivoting.py [points.txt]
"""
import sys
from pathlib import Path

from fareduce.cli import load_points
from fareduce.frame import Label, conical_frame, convex_extreme_points, frame_labels, membership_oracle
from fareduce.linalg import Matrix

path = sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent / "data" / "appA.txt"
points = load_points(str(path))
print("points:", [tuple(map(str, c)) for c in points.columns])

# The convex question is the conic one with a row of ones underneath.
lifted = points.vstack(Matrix([[1] * points.ncols]))
for j, label in enumerate(frame_labels(lifted)):
    inside = membership_oracle(points, j, "convex")
    print(f"  point {j}: {label.value:9}  convex combination of the others: {inside}")
assert all((lab is Label.NECESSARY) != membership_oracle(points, j, "convex") for j, lab in enumerate(frame_labels(lifted)))

print("vertices:", convex_extreme_points(points))
print("cone generators:", conical_frame(points))
