"""Numeric cross-check of ranks: random-restart least-squares fitting of
``F ~ sum c_i L_i^d`` over the complex numbers.

A small residual is evidence that rk(F) <= r; a large one after all restarts
is evidence (never proof) that no r-term decomposition exists. Results here
are always labelled numeric evidence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .apolarity import rank_lower_bound
from .polycore.mpoly import MPoly, binom_dim, monomials_of_degree, multinomial
from .results import Decomposition

LABEL = "numeric evidence"


@dataclass
class FitConfig:
    restarts: int = 50
    max_iter: int = 2000
    success_tol: float = 1e-9
    seed: int = 0
    stop_below: float | None = None  # stop restarting below this residual (default: success_tol)


@dataclass
class FitProblem:
    """Coefficient vector of F (normalized to unit norm) in the degree-d monomial basis."""

    target: np.ndarray
    nvars: int
    degree: int
    r: int
    names: tuple = ()

    def __post_init__(self):
        self.basis = monomials_of_degree(self.nvars, self.degree)
        self.E = np.array(self.basis, dtype=float).reshape(len(self.basis), self.nvars)
        self.mult = np.array([multinomial(e) for e in self.basis], dtype=float)

    @classmethod
    def from_form(cls, F: MPoly, r: int) -> "FitProblem":
        if r < 1:
            raise ValueError("need r >= 1")
        basis = monomials_of_degree(F.nvars, F.degree)
        f = np.array([complex(F.coeff(e)) for e in basis])
        nrm = np.linalg.norm(f)
        if nrm == 0:
            raise ValueError("zero form")
        return cls(f / nrm, F.nvars, F.degree, r, tuple(F.names))

    @property
    def nparams(self) -> int:
        return 2 * self.r * (self.nvars + 1)

    # parameters: real and imaginary parts of (c_1..c_r, a_11..a_rn)
    def unpack(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        h = x.size // 2
        z = x[:h] + 1j * x[h:]
        return z[: self.r], z[self.r:].reshape(self.r, self.nvars)

    def pack(self, c: np.ndarray, A: np.ndarray) -> np.ndarray:
        z = np.concatenate([np.asarray(c, dtype=complex), np.asarray(A, dtype=complex).ravel()])
        return np.concatenate([z.real, z.imag])

    def _powers(self, A: np.ndarray) -> np.ndarray:
        # V[i, m] = mult(e_m) * prod_j A[i, j]^{e_m j}
        return self.mult * np.prod(A[:, None, :] ** self.E[None, :, :], axis=2)

    def complex_residual(self, x: np.ndarray) -> np.ndarray:
        c, A = self.unpack(x)
        return c @ self._powers(A) - self.target

    def residual(self, x: np.ndarray) -> np.ndarray:
        g = self.complex_residual(x)
        return np.concatenate([g.real, g.imag])

    def complex_jacobian(self, x: np.ndarray) -> np.ndarray:
        """Holomorphic derivative of the complex residual w.r.t. (c, A)."""
        c, A = self.unpack(x)
        V = self._powers(A)
        N = len(self.basis)
        J = np.zeros((N, self.r * (self.nvars + 1)), dtype=complex)
        J[:, : self.r] = V.T
        for j in range(self.nvars):
            ej = self.E[:, j]
            Ered = self.E.copy()
            Ered[:, j] = np.maximum(ej - 1, 0)
            dV = self.mult * ej * np.prod(A[:, None, :] ** Ered[None, :, :], axis=2)
            J[:, self.r + np.arange(self.r) * self.nvars + j] = (c[:, None] * dV).T
        return J

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        Jc = self.complex_jacobian(x)
        top = np.hstack([Jc.real, -Jc.imag])
        bottom = np.hstack([Jc.imag, Jc.real])
        return np.vstack([top, bottom])

    def objective(self, x: np.ndarray) -> float:
        g = self.complex_residual(x)
        return 0.5 * float(np.vdot(g, g).real)

    def gradient(self, x: np.ndarray) -> np.ndarray:
        return self.jacobian(x).T @ self.residual(x)


def _start(problem: FitProblem, rng: np.random.Generator) -> np.ndarray:
    A = rng.standard_normal((problem.r, problem.nvars)) + 1j * rng.standard_normal((problem.r, problem.nvars))
    A /= np.linalg.norm(A, axis=1, keepdims=True)
    c = (rng.standard_normal(problem.r) + 1j * rng.standard_normal(problem.r)) / problem.r
    return problem.pack(c, A)


def _run(problem: FitProblem, x0: np.ndarray, max_iter: int) -> tuple[float, np.ndarray]:
    sol = least_squares(problem.residual, x0, jac=problem.jacobian, method="trf",
                        max_nfev=max_iter, ftol=1e-15, xtol=1e-15, gtol=1e-15)
    return float(np.linalg.norm(problem.residual(sol.x))), sol.x


def fit(F: MPoly, r: int, cfg: FitConfig | None = None) -> tuple[float, Decomposition]:
    """Best relative residual ``|F - sum c_i L_i^d| / |F|`` over the restarts, with its decomposition."""
    cfg = cfg or FitConfig()
    problem = FitProblem.from_form(F, r)
    scale = np.linalg.norm([complex(v) for v in F.terms.values()])
    best, best_x = np.inf, None
    # one independent stream per restart: results do not depend on how restarts are scheduled
    for child in np.random.SeedSequence(cfg.seed).spawn(cfg.restarts):
        res, x = _run(problem, _start(problem, np.random.default_rng(child)), cfg.max_iter)
        if res < best:
            best, best_x = res, x
        if best < (cfg.success_tol if cfg.stop_below is None else cfg.stop_below):
            break
    c, A = problem.unpack(best_x)
    terms = [(complex(ci * scale), MPoly.linear([complex(a) for a in row], F.names)) for ci, row in zip(c, A)]
    return best, Decomposition(terms, F.degree, exact=False, residual=best)


def rank_estimate(F: MPoly, cfg: FitConfig | None = None) -> int:
    """Smallest r >= rank_lower_bound(F) whose fit meets ``cfg.success_tol``."""
    cfg = cfg or FitConfig()
    r = max(1, rank_lower_bound(F))
    top = binom_dim(F.nvars, F.degree)
    while r < top:
        if fit(F, r, cfg)[0] < cfg.success_tol:
            return r
        r += 1
    return top


def gradient_check(problem: FitProblem, x: np.ndarray | None = None, step: float = 1e-6, seed: int = 0) -> float:
    """Max relative error between the analytic gradient and central differences."""
    if x is None:
        x = _start(problem, np.random.default_rng(seed))
    g = problem.gradient(x)
    fd = np.empty_like(g)
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = step
        fd[k] = (problem.objective(x + e) - problem.objective(x - e)) / (2 * step)
    return float(np.max(np.abs(g - fd)) / max(np.max(np.abs(fd)), 1e-12))
