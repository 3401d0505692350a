"""Composite Gauss-Legendre building blocks."""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def gauss_legendre(q):
    """Nodes and weights of the ``q``-point rule on ``[-1, 1]`` (read-only)."""
    x, w = np.polynomial.legendre.leggauss(q)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def graded_edges(a, b, panels, grade_left=0, grade_right=0):
    """Panel edges on ``[a, b]``: ``panels`` uniform panels whose first and/or last
    panel is split geometrically (ratio 1/2) ``grade_left``/``grade_right`` times."""
    h = (b - a) / panels
    left = [a + h * 0.5**j for j in range(1, grade_left + 1)]
    right = [b - h * 0.5**j for j in range(1, grade_right + 1)]
    return np.unique(np.concatenate((np.linspace(a, b, panels + 1), left, right)))


def panel_rule(edges, q):
    """Composite rule on the given edges; returns ``(nodes, weights)``."""
    x, w = gauss_legendre(q)
    edges = np.asarray(edges, dtype=float)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def cumulative_rule(f, edges, q):
    """Nodes, weights, ``f`` at the nodes and ``int_{edges[0]}^{node} f`` at every node.

    The running integral adds whole panels before the node to a ``q``-point
    rule on ``[panel start, node]``.
    """
    edges = np.asarray(edges, dtype=float)
    nodes, weights = panel_rule(edges, q)
    fx = f(nodes)
    panel_mass = (weights * fx).reshape(-1, q).sum(axis=1)
    before = np.repeat(np.concatenate(([0.0], np.cumsum(panel_mass)[:-1])), q)
    start = np.repeat(edges[:-1], q)
    s, ws = panel_rule(np.array([0.0, 1.0]), q)
    span = (nodes - start)[:, None]
    partial = span[:, 0] * (f(start[:, None] + span * s[None, :]) @ ws)
    return nodes, weights, fx, before + partial
