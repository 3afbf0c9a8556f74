"""Convergence tables for the geodesic integrator and the path quadrature.

Integrates a fixed geodesic under a Gaussian theta bump at a ladder of step
sizes against a fine reference, then measures the Simpson quadrature error
on a segment with an exponential weight against the closed form.  Prints
both tables with the observed orders; --csv dumps them as one file.

    python3 scripts/convergence_study.py [--csv out.csv]
"""

import argparse
import math

import numpy as np

from scalefield.csvio import emit_csv
from scalefield.fields import ConstantField, GaussianField, LinearField, ScalingField
from scalefield.geodesics import GeodesicState, integrate_geodesic
from scalefield.manifold import Manifold
from scalefield.paths import SegmentPath, scaled_path_length


def geodesic_errors(halvings=6, reference_h=1 / 4096):
    m = Manifold.box([(-3.0, 3.0)] * 3, 13)
    f = ScalingField(m, GaussianField(0.8, (0.5, 0.6, 0.0), 1.0),
                     ConstantField(0.0))
    state = GeodesicState(np.array([-1.0, 0.0, 0.0]),
                          np.array([1.0, 0.2, 0.0]))
    reference = integrate_geodesic(state, f, 1.0, reference_h).final.position
    rows = []
    previous = None
    for k in range(halvings):
        h = 1 / 8 / 2 ** k
        end = integrate_geodesic(state, f, 1.0, h).final.position
        err = float(np.max(np.abs(end - reference)))
        order = math.log2(previous / err) if previous else float("nan")
        rows.append(("rk4", h, err, order))
        previous = err
    return rows


def quadrature_errors(doublings=6):
    m = Manifold.box([(-3.0, 3.0)] * 3, 13)
    f = ScalingField(m, LinearField((2.0, 0.0, 0.0)), ConstantField(0.0))
    seg = SegmentPath(np.zeros(3), np.array([1.0, 0.0, 0.0]))
    exact = (math.e ** 2 - 1.0) / 2.0
    rows = []
    previous = None
    for k in range(doublings):
        steps = 8 * 2 ** k
        err = abs(scaled_path_length(seg, f, np.zeros(3), steps) - exact)
        order = math.log2(previous / err) if previous else float("nan")
        rows.append(("simpson", 1.0 / steps, err, order))
        previous = err
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--csv", help="also write the table to this file")
    args = parser.parse_args()

    rows = geodesic_errors() + quadrature_errors()
    print(f"{'method':<9} {'step':>12} {'error':>12} {'order':>7}")
    for method, step, err, order in rows:
        print(f"{method:<9} {step:>12.3e} {err:>12.3e} {order:>7.2f}")
    if args.csv:
        emit_csv(("method", "step", "error", "order"), rows, args.csv)
        print(f"wrote {args.csv}")


if __name__ == "__main__":
    main()
