"""Scenario files: a small declarative front end for stack calculations.

A scenario is an INI-like text file with [materials], [layers], [grid],
[quantities], and [numerics] sections.  Layers are listed bottom to top;
the outermost two must be semi-infinite.  The grid fixes a z sweep plus
either a transverse wavenumber sweep or a photon energy sweep (not both).
Results come back as one matrix per quantity, rows indexed by z and
columns by the spectral sweep.
"""
from __future__ import annotations

import importlib.resources
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .constants import vacuum_wavenumber
from .errors import PlanarfedError, ScenarioError
from .fieldquants import BiasedQuantumWell, ConstantEta, Thermal, field_report
from .coefficients import stack_coefficients
from .materials import (ConstantIndex, Drude, MaterialModel, Tabulated,
                        VegardAlloy, load_dispersion_table)
from .stack import Layer, LayerStack, spectral_context

QUANTITIES = ("rho_e", "rho_m", "rho_tot", "n_e", "n_m", "n_tot",
              "t_eff_e", "t_eff_m", "t_eff_tot", "e_sq", "h_sq", "u",
              "s_z", "q")


@dataclass
class LayerSpec:
    name: str
    material: str
    thickness: float  # nm; inf for the outer layers
    excitation: object


@dataclass
class Scenario:
    materials: dict[str, MaterialModel]
    layer_specs: list[LayerSpec]
    z_zero_interface: int
    z_grid: np.ndarray
    omega_grid: np.ndarray
    k_grid: np.ndarray | None      # absolute K in 1/nm, or None
    k_over_k0_grid: np.ndarray | None
    quantities: tuple[str, ...]
    loss_floor: float = 1e-9
    threads: int = 1
    label: str = "scenario"

    def build_stack(self) -> LayerStack:
        layers = [Layer(material=self.materials[s.material], excitation=s.excitation)
                  for s in self.layer_specs]
        thick = [s.thickness for s in self.layer_specs]
        n_if = len(layers) - 1
        zs = np.zeros(n_if)
        for i in range(1, n_if):
            zs[i] = zs[i - 1] + thick[i]
        zs -= zs[self.z_zero_interface]
        return LayerStack(layers=tuple(layers), interfaces=tuple(zs))

    @property
    def spectral_axis(self) -> tuple[str, np.ndarray]:
        if len(self.omega_grid) > 1:
            return "omega", self.omega_grid
        if self.k_grid is not None:
            return "k", self.k_grid
        return "k_over_k0", self.k_over_k0_grid


def _parse_number(tok: str, where: str) -> float:
    if tok.lower() in ("inf", "+inf"):
        return np.inf
    try:
        return float(tok)
    except ValueError:
        raise ScenarioError(f"{where}: expected a number, got {tok!r}") from None


def _parse_grid(tokens: list[str], where: str) -> np.ndarray:
    if not tokens:
        raise ScenarioError(f"{where}: empty grid")
    if tokens[0] == "linspace":
        if len(tokens) != 4:
            raise ScenarioError(f"{where}: linspace takes start stop count")
        lo = _parse_number(tokens[1], where)
        hi = _parse_number(tokens[2], where)
        try:
            count = int(tokens[3])
        except ValueError:
            raise ScenarioError(f"{where}: bad count {tokens[3]!r}") from None
        if count < 1:
            raise ScenarioError(f"{where}: count must be positive")
        if count > 1 and hi <= lo:
            raise ScenarioError(f"{where}: grid must increase (got {lo} .. {hi})")
        return np.linspace(lo, hi, count)
    if tokens[0] == "list":
        tokens = tokens[1:]
    vals = np.array([_parse_number(t, where) for t in tokens])
    if len(vals) > 1 and np.any(np.diff(vals) <= 0):
        raise ScenarioError(f"{where}: grid values must be strictly increasing")
    return vals


def _material_table(path: str, base_dir: str):
    if path.startswith("builtin:"):
        name = path[len("builtin:"):]
        ref = importlib.resources.files("planarfed").joinpath("data", name + ".nt")
        with importlib.resources.as_file(ref) as p:
            return load_dispersion_table(str(p))
    return load_dispersion_table(os.path.join(base_dir, path))


def _parse_material(tokens: list[str], name: str, materials: dict, base_dir: str):
    where = f"[materials] {name}"
    if not tokens:
        raise ScenarioError(f"{where}: missing model")
    model, args = tokens[0], tokens[1:]
    if model == "constant":
        if len(args) not in (1, 2):
            raise ScenarioError(f"{where}: constant takes n_re [n_im]")
        n = _parse_number(args[0], where)
        if len(args) == 2:
            n = complex(n, _parse_number(args[1], where))
        return ConstantIndex(index=n)
    if model == "drude":
        if len(args) != 2:
            raise ScenarioError(f"{where}: drude takes plasma_eV damping_eV")
        return Drude(plasma_energy=_parse_number(args[0], where),
                     damping_energy=_parse_number(args[1], where))
    if model == "table":
        if len(args) != 1:
            raise ScenarioError(f"{where}: table takes one path")
        try:
            return _material_table(args[0], base_dir)
        except (OSError, PlanarfedError) as exc:
            raise ScenarioError(f"{where}: {exc}") from None
    if model == "vegard":
        if len(args) != 3:
            raise ScenarioError(f"{where}: vegard takes fraction name_a name_b")
        x = _parse_number(args[0], where)
        for ref in args[1:]:
            if ref not in materials:
                raise ScenarioError(f"{where}: unknown material {ref!r} "
                                    "(define endpoints first)")
        return VegardAlloy(fraction=x, model_a=materials[args[1]],
                           model_b=materials[args[2]])
    raise ScenarioError(f"{where}: unknown model {model!r}")


def _parse_excitation(tokens: list[str], where: str):
    if not tokens:
        raise ScenarioError(f"{where}: missing excitation")
    kind, args = tokens[0], tokens[1:]
    if kind == "thermal":
        if len(args) != 1:
            raise ScenarioError(f"{where}: thermal takes T_K")
        t = _parse_number(args[0], where)
        if t < 0:
            raise ScenarioError(f"{where}: negative temperature")
        return Thermal(temperature_k=t)
    if kind == "bias":
        if len(args) != 2:
            raise ScenarioError(f"{where}: bias takes U_V T_K")
        return BiasedQuantumWell(bias_v=_parse_number(args[0], where),
                                 temperature_k=_parse_number(args[1], where))
    if kind == "const":
        if len(args) != 1:
            raise ScenarioError(f"{where}: const takes eta")
        v = _parse_number(args[0], where)
        if v < 0:
            raise ScenarioError(f"{where}: negative occupation")
        return ConstantEta(value=v)
    raise ScenarioError(f"{where}: unknown excitation {kind!r}")


def parse_scenario(text: str, base_dir: str = ".", label: str = "scenario") -> Scenario:
    """Parse and validate scenario text; raises ScenarioError on any defect."""
    sections: dict[str, list[tuple[int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            sections.setdefault(current, [])
            continue
        if current is None:
            raise ScenarioError(f"line {lineno}: content before any [section]")
        sections[current].append((lineno, line))

    for required in ("materials", "layers", "grid"):
        if required not in sections:
            raise ScenarioError(f"missing [{required}] section")
    known = {"materials", "layers", "grid", "quantities", "numerics"}
    for sec in sections:
        if sec not in known:
            raise ScenarioError(f"unknown section [{sec}]")

    def split_kv(lineno, line, section):
        if "=" not in line:
            raise ScenarioError(f"line {lineno} in [{section}]: expected key = value")
        key, _, val = line.partition("=")
        return key.strip(), val.split()

    materials: dict[str, MaterialModel] = {}
    for lineno, line in sections["materials"]:
        key, tokens = split_kv(lineno, line, "materials")
        if key in materials:
            raise ScenarioError(f"line {lineno}: duplicate material {key!r}")
        materials[key] = _parse_material(tokens, key, materials, base_dir)

    layer_specs: list[LayerSpec] = []
    z_zero = None
    for lineno, line in sections["layers"]:
        key, tokens = split_kv(lineno, line, "layers")
        if key == "z_zero_interface":
            if len(tokens) != 1:
                raise ScenarioError(f"line {lineno}: z_zero_interface takes one index")
            z_zero = int(tokens[0])
            continue
        if len(tokens) < 2:
            raise ScenarioError(f"line {lineno}: layer needs material, thickness, "
                                "excitation")
        mat = tokens[0]
        if mat not in materials:
            raise ScenarioError(f"line {lineno}: unknown material {mat!r}")
        thick = _parse_number(tokens[1], f"layer {key}")
        exc = _parse_excitation(tokens[2:], f"layer {key}")
        layer_specs.append(LayerSpec(name=key, material=mat, thickness=thick,
                                     excitation=exc))

    if len(layer_specs) < 2:
        raise ScenarioError("need at least two layers")
    if not np.isinf(layer_specs[0].thickness) or not np.isinf(layer_specs[-1].thickness):
        raise ScenarioError("the bottom and top layers must have thickness inf")
    for s in layer_specs[1:-1]:
        if not np.isfinite(s.thickness) or s.thickness <= 0:
            raise ScenarioError(f"layer {s.name!r}: interior thickness must be "
                                "finite and positive")
    n_if = len(layer_specs) - 1
    if z_zero is None:
        z_zero = n_if - 1
    if not 0 <= z_zero < n_if:
        raise ScenarioError(f"z_zero_interface {z_zero} out of range 0..{n_if - 1}")

    grid: dict[str, np.ndarray] = {}
    for lineno, line in sections["grid"]:
        key, tokens = split_kv(lineno, line, "grid")
        if key not in ("z", "k", "k_over_k0", "omega"):
            raise ScenarioError(f"line {lineno}: unknown grid axis {key!r}")
        if key in grid:
            raise ScenarioError(f"line {lineno}: duplicate grid axis {key!r}")
        grid[key] = _parse_grid(tokens, f"[grid] {key}")
    if "z" not in grid or "omega" not in grid:
        raise ScenarioError("[grid] must define z and omega")
    if ("k" in grid) == ("k_over_k0" in grid):
        raise ScenarioError("[grid] must define exactly one of k, k_over_k0")
    k = grid.get("k")
    kk0 = grid.get("k_over_k0")
    n_spec = len(k) if k is not None else len(kk0)
    if len(grid["omega"]) > 1 and n_spec > 1:
        raise ScenarioError("only one of the omega and wavenumber axes may "
                            "hold more than one value")
    if np.any(grid["omega"] <= 0):
        raise ScenarioError("photon energies must be positive")
    for s in layer_specs:
        if isinstance(s.excitation, BiasedQuantumWell):
            if s.excitation.bias_v >= grid["omega"].min():
                raise ScenarioError(
                    f"layer {s.name!r}: bias {s.excitation.bias_v:g} V must lie "
                    f"below every photon energy (min {grid['omega'].min():g} eV)")

    quantities: tuple[str, ...] = QUANTITIES
    if "quantities" in sections:
        names: list[str] = []
        for lineno, line in sections["quantities"]:
            key, tokens = split_kv(lineno, line, "quantities")
            if key != "names":
                raise ScenarioError(f"line {lineno}: expected names = ...")
            names.extend(tokens)
        if names == ["all"]:
            names = list(QUANTITIES)
        for n in names:
            if n not in QUANTITIES:
                raise ScenarioError(f"unknown quantity {n!r}; choices: "
                                    + " ".join(QUANTITIES))
        quantities = tuple(dict.fromkeys(names))

    loss_floor, threads = 1e-9, 1
    if "numerics" in sections:
        for lineno, line in sections["numerics"]:
            key, tokens = split_kv(lineno, line, "numerics")
            if key == "loss_floor":
                loss_floor = _parse_number(tokens[0], "[numerics] loss_floor")
                if loss_floor < 0:
                    raise ScenarioError("loss_floor must be nonnegative")
            elif key == "threads":
                threads = int(tokens[0])
                if threads < 1:
                    raise ScenarioError("threads must be >= 1")
            else:
                raise ScenarioError(f"line {lineno}: unknown numerics key {key!r}")

    return Scenario(materials=materials, layer_specs=layer_specs,
                    z_zero_interface=z_zero, z_grid=grid["z"],
                    omega_grid=grid["omega"], k_grid=k, k_over_k0_grid=kk0,
                    quantities=quantities, loss_floor=loss_floor,
                    threads=threads, label=label)


def load_scenario(path: str) -> Scenario:
    with open(path) as f:
        text = f.read()
    return parse_scenario(text, base_dir=os.path.dirname(os.path.abspath(path)),
                          label=os.path.splitext(os.path.basename(path))[0])


@dataclass
class ResultGrid:
    """Matrices of field quantities; rows follow z, columns the spectral axis."""

    scenario: Scenario
    z: np.ndarray
    axis_name: str
    axis: np.ndarray
    data: dict[str, np.ndarray] = field(default_factory=dict)


def _column_samples(sc: Scenario):
    """Yield (omega, K) per spectral column."""
    if len(sc.omega_grid) > 1:
        for om in sc.omega_grid:
            k0 = vacuum_wavenumber(om)
            K = sc.k_grid[0] if sc.k_grid is not None else sc.k_over_k0_grid[0] * k0
            yield om, K
    else:
        om = sc.omega_grid[0]
        k0 = vacuum_wavenumber(om)
        ks = sc.k_grid if sc.k_grid is not None else sc.k_over_k0_grid * k0
        for K in ks:
            yield om, K


def run_scenario(sc: Scenario, threads: int | None = None) -> ResultGrid:
    """Evaluate every requested quantity on the full grid.

    Columns are independent spectral samples and may be computed on a
    thread pool; results land in preallocated arrays so the output is
    identical for any thread count.
    """
    stack = sc.build_stack()
    axis_name, axis = sc.spectral_axis
    samples = list(_column_samples(sc))
    nz, nc = len(sc.z_grid), len(samples)
    data = {q: np.empty((nz, nc)) for q in sc.quantities}

    def one_column(j):
        om, K = samples[j]
        try:
            ctx = spectral_context(stack, K=K, omega_ev=om, loss_floor=sc.loss_floor)
            coeffs = stack_coefficients(ctx)
            for i, z in enumerate(sc.z_grid):
                rep = field_report(ctx, coeffs, float(z)).as_dict()
                for q in sc.quantities:
                    data[q][i, j] = rep[q]
        except PlanarfedError as exc:
            raise PlanarfedError(
                f"column {j} (omega = {om:g} eV, K = {K:g} 1/nm): {exc}"
            ) from exc

    nthreads = threads if threads is not None else sc.threads
    if nthreads <= 1 or nc == 1:
        for j in range(nc):
            one_column(j)
    else:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            for fut in [pool.submit(one_column, j) for j in range(nc)]:
                fut.result()

    return ResultGrid(scenario=sc, z=sc.z_grid, axis_name=axis_name,
                      axis=axis, data=data)


def write_results(result: ResultGrid, outdir: str, render: bool = False) -> list[str]:
    """Write metadata.txt plus one tab-separated matrix per quantity.

    Rows follow the z grid, columns the spectral axis; values use %.17g so
    reruns can be compared byte for byte.  With render=True each matrix
    also gets a PPM heatmap.
    """
    os.makedirs(outdir, exist_ok=True)
    sc = result.scenario
    written = []

    meta = os.path.join(outdir, "metadata.txt")
    with open(meta, "w") as f:
        f.write(f"label\t{sc.label}\n")
        f.write(f"quantities\t{' '.join(sc.quantities)}\n")
        f.write(f"axis\t{result.axis_name}\n")
        f.write("axis_values\t" + "\t".join(f"{v:.17g}" for v in result.axis) + "\n")
        f.write("z_values\t" + "\t".join(f"{v:.17g}" for v in result.z) + "\n")
        f.write(f"omega_ev\t{' '.join(f'{v:.17g}' for v in sc.omega_grid)}\n")
        f.write(f"loss_floor\t{sc.loss_floor:.17g}\n")
        f.write("layers\t" + " | ".join(
            f"{s.name}:{s.material}:{s.thickness:g}" for s in sc.layer_specs) + "\n")
    written.append(meta)

    for q, mat in result.data.items():
        path = os.path.join(outdir, q + ".dat")
        with open(path, "w") as f:
            f.write(f"# quantity: {q}\n")
            f.write(f"# rows: z ({len(result.z)}), columns: {result.axis_name} "
                    f"({len(result.axis)})\n")
            for row in mat:
                f.write("\t".join(f"{v:.17g}" for v in row) + "\n")
        written.append(path)
        if render:
            written.append(render_ppm(mat, os.path.join(outdir, q + ".ppm")))
    return written


def render_ppm(matrix: np.ndarray, path: str) -> str:
    """Render a matrix as a binary PPM heatmap (log-compressed magnitude,
    blue negative, red positive)."""
    mag = np.log1p(np.abs(matrix) / max(np.abs(matrix).max(), 1e-300) * 1e4)
    mag = mag / max(mag.max(), 1e-300)
    pos = matrix >= 0
    r = np.where(pos, mag, 0.2 * mag)
    b = np.where(pos, 0.2 * mag, mag)
    g = 0.15 * mag
    img = np.stack([r, g, b], axis=-1)
    img = np.flipud(img)  # put increasing z at the top of the image
    byte = (255 * np.clip(img, 0, 1)).astype(np.uint8)
    h, w, _ = byte.shape
    with open(path, "wb") as f:
        f.write(b"P6\n%d %d\n255\n" % (w, h))
        f.write(byte.tobytes())
    return path
