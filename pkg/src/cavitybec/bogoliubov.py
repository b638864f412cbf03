"""Bogoliubov normal modes of the polariton and phonon sectors.

Both sectors are governed by 6x6 non-Hermitian matrices with a particle-hole
structure (GAMMA, pairing eigenmodes at +-omega) and a pseudo-Hermiticity
(OMEGA) that makes stable spectra real and fixes the bosonic normalization
r+ OMEGA r = sgn(omega).  Left eigenvectors follow as l = sgn(omega) OMEGA r.

The polariton matrix F always carries an exact zero-frequency pair from
atom-number conservation (the condensate phase mode); it is detected and set
aside, leaving two normalizable positive polariton modes.  Phonon matrices
G(q) have three positive modes, one per band.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .params import ThermoParams
from .meanfield import MeanField
from .hamiltonian import ModelExpansion

# pairwise swap of (annihilation, creation) slots
GAMMA = np.kron(np.eye(3), np.array([[0.0, 1.0], [1.0, 0.0]]))
# bosonic metric
OMEGA = np.diag([1.0, -1.0, 1.0, -1.0, 1.0, -1.0])

ZERO_TOL = 1e-8


class DiagonalizationError(RuntimeError):
    """Defective or non-real Bogoliubov spectrum (instability/criticality)."""


@dataclass(frozen=True)
class ModeSet:
    """Positive-frequency normal modes of one 6x6 Bogoliubov matrix.

    right[:, i] and left[:, i] are the OMEGA-normalized right and left
    eigenvectors of mode i; frequencies ascend.  zero_count is the number
    of exact zero-frequency directions excluded from the mode list.
    """

    frequencies: np.ndarray
    right: np.ndarray
    left: np.ndarray
    sector: str = ""
    zero_count: int = 0

    def mode(self, i):
        return self.frequencies[i], self.right[:, i], self.left[:, i]


def symmetry_residuals(f: np.ndarray, g_minus: np.ndarray | None = None) -> dict:
    """Residuals of the particle-hole and pseudo-Hermiticity identities.

    For the polariton matrix pass only f; for a phonon matrix pass G(q) as f
    and G(-q) as g_minus.
    """
    partner = f if g_minus is None else g_minus
    return {
        "gamma": np.max(np.abs(GAMMA @ f @ GAMMA + np.conj(partner))),
        "omega": np.max(np.abs(OMEGA @ f @ OMEGA - f.conj().T)),
    }


def diagonalize_symplectic(m: np.ndarray, sector: str = "",
                           zero_tol: float = ZERO_TOL,
                           real_tol: float = 1e-8) -> ModeSet:
    """Extract the positive-frequency bosonic modes of a 6x6 matrix.

    Raises DiagonalizationError for non-real spectra (dynamical instability
    or criticality) and for defective positive-frequency subspaces.
    """
    vals, vecs = np.linalg.eig(m)
    scale = max(1.0, np.max(np.abs(vals)))
    if np.max(np.abs(vals.imag)) > real_tol * scale:
        raise DiagonalizationError(
            f"non-real spectrum in sector {sector!r}: "
            f"max |Im omega| = {np.max(np.abs(vals.imag)):.3e}")
    omega = vals.real

    zero_mask = np.abs(omega) < zero_tol * scale
    zero_count = int(np.sum(zero_mask))
    pos_idx = np.where(~zero_mask & (omega > 0))[0]
    neg_count = int(np.sum(~zero_mask & (omega < 0)))
    if len(pos_idx) != neg_count:
        raise DiagonalizationError(
            f"unpaired spectrum in sector {sector!r}: {len(pos_idx)} positive "
            f"vs {neg_count} negative modes")

    order = pos_idx[np.argsort(omega[pos_idx])]
    freqs = []
    rights = []
    for i in order:
        r = vecs[:, i]
        norm = np.real(np.conj(r) @ OMEGA @ r)
        if norm <= zero_tol:
            raise DiagonalizationError(
                f"non-normalizable positive mode at omega = {omega[i]:.6g} "
                f"in sector {sector!r} (dynamical instability)")
        r = r / np.sqrt(norm)
        k = int(np.argmax(np.abs(r)))
        phase = r[k] / abs(r[k])
        r = r / phase
        freqs.append(omega[i])
        rights.append(r)

    right = np.column_stack(rights) if rights else np.zeros((6, 0), complex)
    # reciprocity check doubles as a defectiveness detector
    gram = right.conj().T @ OMEGA @ right
    if rights and np.max(np.abs(gram - np.eye(len(rights)))) > 1e-8:
        raise DiagonalizationError(
            f"defective positive-frequency subspace in sector {sector!r}")
    left = OMEGA @ right
    return ModeSet(frequencies=np.array(freqs), right=right, left=left,
                   sector=sector, zero_count=zero_count)


def negative_modes(ms: ModeSet) -> ModeSet:
    """Companion negative-frequency modes of the same matrix.

    omega -> -omega with r -> GAMMA r, which holds for the polariton matrix
    and for G(q) alike (the more familiar map r -> GAMMA r* sends the +q
    modes to the -omega modes of G(-q) instead, because the particle-hole
    identity links G(q) to G(-q)*).  The OMEGA-norm of these modes is -1,
    so the matching left vectors are -OMEGA r.
    """
    right = GAMMA @ ms.right
    return ModeSet(frequencies=-ms.frequencies, right=right,
                   left=-OMEGA @ right, sector=ms.sector,
                   zero_count=ms.zero_count)


def mirrored_modes(ms: ModeSet) -> ModeSet:
    """Modes of G(-q) from those of G(q).

    The spectrum is even in q and (with the phase convention used here) the
    eigenvectors at -q are the complex conjugates of those at q, which
    follows from G(-q) = -Gamma G(q)* Gamma and Gamma exchanging the +-q
    creation/annihilation slots pairwise.
    """
    right = np.conj(ms.right)
    return ModeSet(frequencies=ms.frequencies, right=right,
                   left=OMEGA @ right, sector=ms.sector + " mirrored",
                   zero_count=ms.zero_count)


def build_polariton_matrix(p: ThermoParams, mf: MeanField) -> np.ndarray:
    return ModelExpansion(p, mf).polariton_matrix()


def build_phonon_matrix(p: ThermoParams, mf: MeanField, q: float) -> np.ndarray:
    return ModelExpansion(p, mf).phonon_matrix(q)


def _overlap_permutation(prev: ModeSet, cur: ModeSet, threshold=0.5):
    """Match cur modes to prev modes by symplectic eigenvector overlap."""
    n = len(prev.frequencies)
    ov = np.abs(prev.right.conj().T @ OMEGA @ cur.right)
    perm = np.full(n, -1)
    used = set()
    for i in np.argsort(-ov.max(axis=1)):
        for j in np.argsort(-ov[i]):
            if j not in used:
                perm[i] = j
                used.add(j)
                break
        if ov[i, perm[i]] < threshold:
            return None
    return perm


def _permute(ms: ModeSet, perm) -> ModeSet:
    return ModeSet(frequencies=ms.frequencies[perm], right=ms.right[:, perm],
                   left=ms.left[:, perm], sector=ms.sector,
                   zero_count=ms.zero_count)


def phonon_bands(p: ThermoParams, mf: MeanField, q_grid,
                 expansion: ModelExpansion | None = None) -> list[ModeSet]:
    """Diagonalize G(q) over a grid, bands labeled continuously in q.

    Matching starts from the first grid point sorted ascending; across
    neighbouring q points modes are paired by maximal eigenvector overlap
    so that band labels survive crossings.  Exact-degeneracy points fall
    back to ascending order (deterministic).
    """
    exp = expansion or ModelExpansion(p, mf)
    out: list[ModeSet] = []
    prev: ModeSet | None = None
    for q in np.asarray(q_grid, dtype=float):
        try:
            ms = diagonalize_symplectic(exp.phonon_matrix(q), sector=f"phonon q={q:g}")
        except DiagonalizationError as exc:
            raise DiagonalizationError(f"q = {q:g}: {exc}") from exc
        if prev is not None:
            perm = _overlap_permutation(prev, ms)
            if perm is not None:
                ms = _permute(ms, perm)
        out.append(ms)
        prev = ms
    return out


def soft_mode(p: ThermoParams, mf: MeanField,
              expansion: ModelExpansion | None = None,
              prev: tuple[ModeSet, int] | None = None):
    """Frequency and index of the soft polariton branch.

    Standalone the soft mode is the lower of the two normalizable polariton
    modes (the photon-like branch sits near -Delta_C).  Along a sweep pass
    (previous ModeSet, previous index) to track by eigenvector overlap; an
    overlap below 0.5 with every candidate raises instead of guessing.
    """
    exp = expansion or ModelExpansion(p, mf)
    ms = diagonalize_symplectic(exp.polariton_matrix(), sector="polariton")
    if len(ms.frequencies) == 0:
        raise DiagonalizationError("no normalizable polariton modes")
    if prev is None:
        idx = 0
    else:
        prev_ms, prev_idx = prev
        r_prev = prev_ms.right[:, prev_idx]
        ov = np.abs(np.conj(r_prev) @ OMEGA @ ms.right)
        idx = int(np.argmax(ov))
        if ov[idx] < 0.5:
            raise DiagonalizationError(
                f"ambiguous soft-mode tracking at y = {mf.y}: "
                f"best overlap {ov[idx]:.3f} < 0.5")
    return ms.frequencies[idx], idx, ms
