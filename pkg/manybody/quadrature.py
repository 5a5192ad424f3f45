"""
Deterministic N = 2 oracle: tensor quadrature over |Psi|^2 on R^4.

Coordinates are the centre X = (x1 + x2)/2 on [-R1, R1]^2 and the relative
vector y = x1 - x2 in polar form with |y| <= 2 R1; dx1 dx2 = dX dy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from meanfield.potential import PotentialSpec
from twobody import AnyonPairParams, jastrow_f

from .condensate import Condensate
from .local_terms import TERMS, local_terms, radial_rule


@dataclass(frozen=True)
class PairQuadrature:
    terms: dict[str, float]
    total: float
    norm_ratio: float
    x1: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def marginal_histogram(self, edges: np.ndarray) -> np.ndarray:
        """Density of x1 averaged over the square bins defined by ``edges``."""
        hist, _, _ = np.histogram2d(
            self.x1[:, 0], self.x1[:, 1], bins=[edges, edges], weights=self.weights
        )
        area = (edges[1] - edges[0]) ** 2
        return hist / (self.weights.sum() * area)


def pair_quadrature_breakdown(
    u: Condensate,
    params: AnyonPairParams,
    potential: PotentialSpec,
    centre_nodes: int = 48,
    radial_nodes: int = 24,
    angular_nodes: int = 48,
    rao_blackwell: bool = False,
) -> PairQuadrature:
    """Every energy term at N = 2 as a weighted average over quadrature nodes."""
    R1 = u.support_radius
    xc, wc = np.polynomial.legendre.leggauss(centre_nodes)
    xc, wc = R1 * xc, R1 * wc
    radii, rweights = radial_rule(params, 2.0 * R1, radial_nodes)
    theta = 2.0 * np.pi * np.arange(angular_nodes) / angular_nodes
    dtheta = 2.0 * np.pi / angular_nodes

    rel = (radii[:, None, None] * np.stack([np.cos(theta), np.sin(theta)], axis=-1)[None]).reshape(-1, 2)
    rel_w = np.repeat(rweights * radii * dtheta, angular_nodes)
    f2 = np.repeat(jastrow_f(radii, params) ** 2, angular_nodes)

    sums = {name: 0.0 for name in TERMS}
    z_f = z_1 = 0.0
    x1_all, w_all = [], []
    for ix in range(centre_nodes):
        centre = np.stack([np.full(centre_nodes, xc[ix]), xc], axis=-1)
        cw = wc[ix] * wc
        x1 = centre[:, None, :] + 0.5 * rel[None, :, :]
        x2 = centre[:, None, :] - 0.5 * rel[None, :, :]
        product = u.density(x1) * u.density(x2) * cw[:, None] * rel_w[None, :]
        weight = product * f2[None, :]
        keep = weight > 0
        if not keep.any():
            continue
        z_1 += float(product.sum())
        z_f += float(weight.sum())
        positions = np.stack([x1[keep], x2[keep]], axis=1)
        w = weight[keep]
        terms = local_terms(positions, u, params, potential, rao_blackwell=rao_blackwell)
        for name in TERMS:
            sums[name] += float(np.dot(w, terms[name]))
        x1_all.append(x1[keep])
        w_all.append(w)

    terms = {name: value / z_f for name, value in sums.items()}
    return PairQuadrature(
        terms=terms,
        total=sum(terms.values()),
        norm_ratio=z_f / z_1,
        x1=np.concatenate(x1_all),
        weights=np.concatenate(w_all),
    )
