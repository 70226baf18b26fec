"""Structured vertical-slice (x, z) fields and discrete operators.

Scalars are arrays of shape (nx, nz) at cell centers; vector fields carry the
three components (u, v_y, w) as shape (3, nx, nz) so y-invariant curls are
available.  x is periodic; z has rigid lids at z = 0 and z = Lz.

Boundary treatment is by one layer of ghost values: "even" mirrors the first
interior cell (zero normal gradient; scalars and tangential velocity
components), "odd" negates it (zero wall value; normal velocity and the
normal component of any flux).  With this pairing the centered difference
operators satisfy a summation-by-parts identity exactly, so flux divergences
telescope to zero over the domain and the projection operator of the
constrained solver is symmetric.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass(frozen=True)
class GridSpec:
    nx: int
    nz: int
    dx: float
    dz: float

    def __post_init__(self):
        if self.nx < 4 or self.nz < 4:
            raise ValueError("grid needs at least 4 cells per direction")
        if self.dx <= 0 or self.dz <= 0:
            raise ValueError("cell sizes must be positive")

    @property
    def Lx(self) -> float:
        return self.nx * self.dx

    @property
    def Lz(self) -> float:
        return self.nz * self.dz

    @property
    def shape(self):
        return (self.nx, self.nz)

    @property
    def x(self):
        """Cell-center x coordinates, shape (nx, 1)."""
        return ((np.arange(self.nx) + 0.5) * self.dx)[:, None]

    @property
    def z(self):
        """Cell-center z coordinates, shape (1, nz)."""
        return ((np.arange(self.nz) + 0.5) * self.dz)[None, :]

    @property
    def cell_volume(self) -> float:
        return self.dx * self.dz

    def meshgrid(self):
        return np.broadcast_to(self.x, self.shape), np.broadcast_to(self.z, self.shape)

    def zeros(self):
        return np.zeros(self.shape)

    def zeros_vec(self):
        return np.zeros((3,) + self.shape)

    def check_same(self, f):
        if np.shape(f)[-2:] != self.shape:
            raise ValueError(f"field shape {np.shape(f)} does not match grid {self.shape}")

    def integral(self, f):
        """Domain integral of a cell-centered scalar."""
        return float(np.sum(f)) * self.cell_volume


def _pad_z(f, kind):
    """Append ghost layers in z: kind 'even' mirrors, 'odd' negates."""
    if kind == "even":
        lo, hi = f[:, :1], f[:, -1:]
    elif kind == "odd":
        lo, hi = -f[:, :1], -f[:, -1:]
    else:
        raise ValueError(kind)
    return np.concatenate([lo, f, hi], axis=1)


class Operators:
    """Second-order centered operators on one grid."""

    def __init__(self, spec: GridSpec):
        self.spec = spec

    def ddx(self, f):
        return (np.roll(f, -1, axis=-2) - np.roll(f, 1, axis=-2)) / (2.0 * self.spec.dx)

    def ddz(self, f, bc="even"):
        g = _pad_z(f, bc)
        return (g[:, 2:] - g[:, :-2]) / (2.0 * self.spec.dz)

    def grad(self, f, bc="even"):
        """Gradient of a scalar; the y component is zero by slice symmetry."""
        self.spec.check_same(f)
        out = np.zeros((3,) + f.shape)
        out[0] = self.ddx(f)
        out[2] = self.ddz(f, bc=bc)
        return out

    def div(self, F, flux_bc="odd"):
        """Divergence of a vector field whose z component is a flux
        (odd ghosts: no flow through the rigid lids)."""
        self.spec.check_same(F)
        return self.ddx(F[0]) + self.ddz(F[2], bc=flux_bc)

    def curl(self, F, tangential_bc="even", normal_bc="odd"):
        """Curl of a y-invariant vector field (u, v_y, w)."""
        self.spec.check_same(F)
        out = np.zeros_like(np.asarray(F, dtype=float))
        out[0] = -self.ddz(F[1], bc=tangential_bc)
        out[1] = self.ddz(F[0], bc=tangential_bc) - self.ddx(F[2])
        out[2] = self.ddx(F[1])
        return out

    def laplacian_varcoef(self, a, f, bc="even"):
        """div(a grad f); the flux a grad f gets odd z ghosts."""
        return self.div(a * self.grad(f, bc=bc), flux_bc="odd")

    def grad_tensor(self, V):
        """Velocity gradient G[i, j] = d V_i / d x_j for V = (u, v_y, w).

        Tangential components take even z ghosts (free slip), the normal
        component odd ones (rigid lid).
        """
        self.spec.check_same(V)
        G = np.zeros((3, 3) + V.shape[1:])
        for i, bc in ((0, "even"), (1, "even"), (2, "odd")):
            G[i, 0] = self.ddx(V[i])
            G[i, 2] = self.ddz(V[i], bc=bc)
        return G

    def div_tensor(self, S, row_bc=("odd", "odd", "even")):
        """Row-wise divergence (div S)_i = d S_ij / d x_j.

        Default ghosts match the free-slip stress convention: tangential
        stresses S_xz, S_yz vanish at the lids (odd), the normal stress S_zz
        is extended with zero gradient (even).  Advective tensors whose
        z-fluxes all vanish at the walls should pass all-odd ghosts.
        """
        self.spec.check_same(S[0])
        out = np.zeros((3,) + S.shape[2:])
        for i in range(3):
            out[i] = self.ddx(S[i, 0]) + self.ddz(S[i, 2], bc=row_bc[i])
        return out

    # ---- conservative advection ------------------------------------------

    def advect(self, V, f, bc="even"):
        """v . grad f."""
        g = self.grad(f, bc=bc)
        return V[0] * g[0] + V[2] * g[2]

    def advect_density(self, V, f, scheme="centered", fbc="even"):
        """div(f v) in face-flux form; telescopes to the boundary fluxes
        exactly, which vanish for rigid lids and the periodic seam."""
        spec = self.spec
        # x faces (periodic)
        u_face = 0.5 * (V[0] + np.roll(V[0], -1, axis=0))
        if scheme == "centered":
            f_face_x = 0.5 * (f + np.roll(f, -1, axis=0))
        elif scheme == "upwind":
            f_face_x = np.where(u_face > 0, f, np.roll(f, -1, axis=0))
        else:
            raise ValueError(scheme)
        Fx = u_face * f_face_x
        dFx = (Fx - np.roll(Fx, 1, axis=0)) / spec.dx
        # z faces (rigid): w odd, f even
        w = _pad_z(V[2], "odd")
        fz = _pad_z(f, fbc)
        w_face = 0.5 * (w[:, :-1] + w[:, 1:])          # nz + 1 faces
        if scheme == "centered":
            f_face_z = 0.5 * (fz[:, :-1] + fz[:, 1:])
        else:
            f_face_z = np.where(w_face > 0, fz[:, :-1], fz[:, 1:])
        Fz = w_face * f_face_z
        dFz = (Fz[:, 1:] - Fz[:, :-1]) / spec.dz
        return dFx + dFz


def circulation(spec: GridSpec, one_form, loop, closed_tol=1e-9):
    """Trapezoidal line integral of a one-form along a closed polyline.

    loop: array (N, 2) of (x, z) points; the last point must coincide with
    the first (an open polyline raises).  x coordinates are used as given
    (unwrapped), so loops may wind across the periodic seam.
    """
    loop = np.asarray(loop, dtype=float)
    if loop.ndim != 2 or loop.shape[1] != 2 or loop.shape[0] < 3:
        raise ValueError("loop must be an (N, 2) polyline")
    if (abs(loop[0, 0] - loop[-1, 0]) > closed_tol * max(spec.Lx, 1.0)
            or abs(loop[0, 1] - loop[-1, 1]) > closed_tol * max(spec.Lz, 1.0)):
        raise ValueError("loop is not closed")
    ax = interp_bilinear(spec, one_form[0], loop[:, 0], loop[:, 1])
    az = interp_bilinear(spec, one_form[2], loop[:, 0], loop[:, 1])
    dx = np.diff(loop[:, 0])
    dz = np.diff(loop[:, 1])
    fx = 0.5 * (ax[:-1] + ax[1:])
    fz = 0.5 * (az[:-1] + az[1:])
    return float(np.sum(fx * dx + fz * dz))


def interp_bilinear(spec: GridSpec, f, x, z):
    """Bilinear interpolation of a cell-centered field at physical points.

    Periodic in x; z is clamped to the cell-center range (fields are
    extended constantly into the half-cell next to each lid).
    """
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    gx = x / spec.dx - 0.5
    i0 = np.floor(gx).astype(int)
    wx = gx - i0
    i0 = np.mod(i0, spec.nx)
    i1 = np.mod(i0 + 1, spec.nx)
    gz = np.clip(z / spec.dz - 0.5, 0.0, spec.nz - 1.0)
    j0 = np.minimum(np.floor(gz).astype(int), spec.nz - 2)
    wz = gz - j0
    j1 = j0 + 1
    return ((1 - wx) * (1 - wz) * f[i0, j0] + wx * (1 - wz) * f[i1, j0]
            + (1 - wx) * wz * f[i0, j1] + wx * wz * f[i1, j1])


# ---------------------------------------------------------------------------
# hydrostatic background


@dataclass
class BackgroundProfile:
    """Hydrostatically balanced reference state on the grid columns.

    rho0 is defined from the grid's own vertical derivative of the analytic
    p0 profile, so -grad p0 - rho0 grad Phi vanishes identically in the
    discrete momentum equation (exact rest states).
    """

    spec: GridSpec
    g: float
    p0: np.ndarray       # (nx, nz)
    rho0: np.ndarray
    T0: np.ndarray
    theta0: np.ndarray
    s0: np.ndarray
    eos: object = None

    @property
    def Phi(self):
        return np.broadcast_to(self.g * self.spec.z, self.spec.shape)

    def grad_Phi(self):
        out = np.zeros((3,) + self.spec.shape)
        out[2] = self.g
        return out

    def balance_residual(self):
        """max |dp0/dz + rho0 g| relative to the p0 scale."""
        ops = Operators(self.spec)
        resid = ops.ddz(self.p0, bc="even") + self.rho0 * self.g
        return float(np.max(np.abs(resid)) * self.spec.dz / np.max(self.p0))


def build_background(spec: GridSpec, eos, kind="isothermal", T_surf=288.0,
                     theta_surf=300.0, p_surf=1.0e5, g=9.81, comp=None):
    """Isothermal or constant-theta hydrostatic background for an ideal-gas
    EOS (closed-form pressure profiles).

    Raises ValueError if the column is too tall for the requested profile
    (non-positive pressure).
    """
    ops = Operators(spec)
    z = np.broadcast_to(spec.z, spec.shape)
    if hasattr(eos, "gas_constant") and comp is not None:
        R = float(np.asarray(eos.gas_constant(comp)).ravel()[0])
    elif hasattr(eos.const, "R_d"):
        R = eos.const.R_d
    else:
        R = eos.const.R
    C_p = float(np.asarray(eos.heat_capacity_p(T_surf, p_surf, comp)).ravel()[0])
    if g == 0.0:
        p0 = np.full(spec.shape, p_surf)
        T_col = np.full(spec.shape, T_surf if kind == "isothermal" else theta_surf)
        rho0 = p0 / (R * T_col)
    elif kind == "isothermal":
        H = R * T_surf / g
        p0 = p_surf * np.exp(-z / H)
        rho0 = -ops.ddz(p0, bc="even") / g
    elif kind == "constant-theta":
        # Exner pressure linear in z: pi0 = 1 - g z / (C_p theta)
        pi0 = 1.0 - g * z / (C_p * theta_surf)
        if np.any(pi0 <= 0):
            raise ValueError("domain too tall for constant-theta profile")
        kappa = R / C_p
        p0 = p_surf * pi0 ** (1.0 / kappa)
        rho0 = -ops.ddz(p0, bc="even") / g
    else:
        raise ValueError(f"unknown background kind {kind!r}")
    T0 = p0 / (R * rho0)
    eta0 = eos.entropy(T0, p0, comp)
    s0 = rho0 * eta0
    from .thermo import potential_temperature
    theta0 = potential_temperature(eos, p0, T0, comp, mode="inversion")
    return BackgroundProfile(spec=spec, g=g, p0=p0, rho0=rho0, T0=T0,
                             theta0=theta0, s0=s0, eos=eos)


# ---------------------------------------------------------------------------
# raw field I/O (little-endian float64, z-major, text sidecar header)


def write_field(directory, name, f, spec: GridSpec, time=0.0):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    data = np.ascontiguousarray(np.asarray(f, dtype="<f8").T)  # z-major
    data.tofile(directory / f"{name}.raw")
    header = (f"field: {name}\nnx: {spec.nx}\nnz: {spec.nz}\n"
              f"dx: {spec.dx!r}\ndz: {spec.dz!r}\ntime: {time!r}\n")
    (directory / f"{name}.hdr").write_text(header)


def read_field(directory, name):
    directory = Path(directory)
    meta = {}
    for line in (directory / f"{name}.hdr").read_text().splitlines():
        key, _, value = line.partition(":")
        meta[key.strip()] = value.strip()
    nx, nz = int(meta["nx"]), int(meta["nz"])
    data = np.fromfile(directory / f"{name}.raw", dtype="<f8")
    if data.size != nx * nz:
        raise ValueError(f"snapshot {name}: expected {nx * nz} values, got {data.size}")
    f = data.reshape(nz, nx).T.copy()
    spec = GridSpec(nx=nx, nz=nz, dx=float(meta["dx"]), dz=float(meta["dz"]))
    return f, spec, float(meta["time"])
