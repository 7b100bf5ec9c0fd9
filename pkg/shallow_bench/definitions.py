# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Shared dataclasses and types."""

import abc
import dataclasses
import enum
import math
from typing import Any, Collection, Dict, Iterator, Mapping, Optional, Tuple, Union

import numpy as np

from shallow_bench.exceptions import DomainError

GRAVITY = 9.81
""" Default gravitational acceleration [m/s^2]. """

DRY_TOLERANCE = 1e-8
""" Default depth below which a state is considered dry [m]. """

Primitives = Union[str, bool, int, float, Collection[str], Collection[float], None]
# Type def for values allowed in catalog config


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


class FrictionFamily(enum.Enum):
    """Supported bed friction laws."""

    NONE = "none"
    MANNING = "manning"
    DARCY_WEISBACH = "darcy-weisbach"
    CHEZY = "chezy"


@dataclasses.dataclass(frozen=True)
class FrictionLaw:
    """
    A friction family with its coefficient.

    Manning takes n, Darcy-Weisbach takes f and Chezy takes C. The coefficient of the
    ``NONE`` family is ignored.
    """

    family: FrictionFamily = FrictionFamily.NONE
    coefficient: float = 0.0

    def __post_init__(self) -> None:
        if self.family is not FrictionFamily.NONE:
            _require(
                math.isfinite(self.coefficient) and self.coefficient > 0,
                f"{self.family.value} friction coefficient must be positive, "
                f"got {self.coefficient}",
            )

    @classmethod
    def none(cls) -> "FrictionLaw":
        return cls()

    @classmethod
    def manning(cls, n: float) -> "FrictionLaw":
        return cls(FrictionFamily.MANNING, n)

    @classmethod
    def darcy_weisbach(cls, f: float) -> "FrictionLaw":
        return cls(FrictionFamily.DARCY_WEISBACH, f)

    @classmethod
    def chezy(cls, c: float) -> "FrictionLaw":
        return cls(FrictionFamily.CHEZY, c)

    @classmethod
    def from_name(cls, family: str, coefficient: float = 0.0) -> "FrictionLaw":
        """
        Build a friction law from its family name, as used in catalog parameters.

        :param family: one of ``none``, ``manning``, ``darcy-weisbach`` or ``chezy``
        :param coefficient: the law coefficient
        :raises DomainError: if the family is unknown
        """
        try:
            return cls(FrictionFamily(family.lower()), float(coefficient))
        except ValueError as ex:
            if isinstance(ex, DomainError):
                raise
            raise DomainError(f"Unknown friction family '{family}'") from ex

    @property
    def is_frictionless(self) -> bool:
        return self.family is FrictionFamily.NONE

    def cf(self, gravity: float = GRAVITY) -> float:
        """
        Dimensionless friction factor such that S_f = cf * q|q| / h^p.

        :param gravity: gravitational acceleration, needed by Darcy-Weisbach
        """
        if self.family is FrictionFamily.MANNING:
            return self.coefficient**2
        if self.family is FrictionFamily.DARCY_WEISBACH:
            return self.coefficient / (8.0 * gravity)
        if self.family is FrictionFamily.CHEZY:
            return 1.0 / self.coefficient**2
        return 0.0

    @property
    def depth_exponent(self) -> float:
        """Power of h in the friction slope denominator."""
        return 10.0 / 3.0 if self.family is FrictionFamily.MANNING else 3.0


@dataclasses.dataclass(frozen=True)
class ChannelSpec:
    """Physical setting shared by every solution: a rectangular unit-width channel."""

    length: float
    gravity: float = GRAVITY
    friction: FrictionLaw = FrictionLaw()
    rain_rate: float = 0.0
    viscosity: float = 0.0
    dry_tolerance: float = DRY_TOLERANCE
    width: Optional[float] = None

    def __post_init__(self) -> None:
        _require(math.isfinite(self.length) and self.length > 0, "Length must be positive")
        _require(math.isfinite(self.gravity) and self.gravity > 0, "Gravity must be positive")
        _require(self.rain_rate >= 0, "Rain rate must be non-negative")
        _require(self.viscosity >= 0, "Viscosity must be non-negative")
        _require(self.dry_tolerance > 0, "Dry tolerance must be positive")
        _require(self.width is None or self.width > 0, "Width must be positive")


class FlowRegime(enum.Enum):
    """Local flow regime from the Froude number."""

    SUBCRITICAL = "subcritical"
    CRITICAL = "critical"
    SUPERCRITICAL = "supercritical"
    DRY = "dry"


class SlopeClass(enum.Enum):
    """Bed slope class of gradually varied flow."""

    MILD = "M"
    CRITICAL = "C"
    STEEP = "S"
    HORIZONTAL = "H"
    ADVERSE = "A"


ADMISSIBLE_ZONES: Mapping[SlopeClass, Tuple[int, ...]] = {
    SlopeClass.MILD: (1, 2, 3),
    SlopeClass.STEEP: (1, 2, 3),
    # C2 is the degenerate line h = h_c = h_n
    SlopeClass.CRITICAL: (1, 2, 3),
    SlopeClass.HORIZONTAL: (2, 3),
    SlopeClass.ADVERSE: (2, 3),
}


@dataclasses.dataclass(frozen=True)
class ProfileType:
    """One of the thirteen admissible gradually varied flow profile types."""

    slope: SlopeClass
    zone: int

    def __post_init__(self) -> None:
        _require(
            self.zone in ADMISSIBLE_ZONES[self.slope],
            f"Zone {self.zone} is not admissible for slope class {self.slope.name}",
        )

    @property
    def name(self) -> str:
        return f"{self.slope.value}{self.zone}"

    @classmethod
    def from_name(cls, name: str) -> "ProfileType":
        """Parse a name such as ``M1`` or ``a3``."""
        _require(len(name) == 2 and name[1].isdigit(), f"Invalid profile type '{name}'")
        try:
            slope = SlopeClass(name[0].upper())
        except ValueError as ex:
            raise DomainError(f"Invalid profile type '{name}'") from ex
        return cls(slope, int(name[1]))

    @staticmethod
    def all() -> Tuple["ProfileType", ...]:
        return tuple(
            ProfileType(slope, zone)
            for slope, zones in ADMISSIBLE_ZONES.items()
            for zone in zones
        )

    def __str__(self) -> str:
        return self.name


@dataclasses.dataclass(frozen=True)
class Grid:
    """
    A uniform cell-centred grid.

    One-dimensional grids cover [origin, origin + length] with ``n_cells`` cells. Setting
    ``n_cells_y`` and ``width`` makes a two-dimensional grid whose arrays are indexed
    ``[j, i]`` (y first).
    """

    n_cells: int
    length: float
    origin: float = 0.0
    n_cells_y: Optional[int] = None
    width: Optional[float] = None
    origin_y: float = 0.0

    def __post_init__(self) -> None:
        _require(self.n_cells >= 1, f"A grid needs at least one cell, got {self.n_cells}")
        _require(self.length > 0, "Grid length must be positive")
        _require(
            (self.n_cells_y is None) == (self.width is None),
            "A two-dimensional grid needs both n_cells_y and width",
        )
        if self.n_cells_y is not None:
            _require(self.n_cells_y >= 1, "A grid needs at least one cell in y")
            _require(self.width is not None and self.width > 0, "Grid width must be positive")

    @property
    def is_2d(self) -> bool:
        return self.n_cells_y is not None

    @property
    def dx(self) -> float:
        return self.length / self.n_cells

    @property
    def dy(self) -> float:
        if self.n_cells_y is None or self.width is None:
            raise DomainError("A one-dimensional grid has no y spacing")
        return self.width / self.n_cells_y

    @property
    def x(self) -> np.ndarray:
        return self.origin + (np.arange(self.n_cells) + 0.5) * self.dx

    @property
    def y(self) -> np.ndarray:
        if self.n_cells_y is None:
            raise DomainError("A one-dimensional grid has no y coordinates")
        return self.origin_y + (np.arange(self.n_cells_y) + 0.5) * self.dy

    @property
    def faces(self) -> np.ndarray:
        return self.origin + np.arange(self.n_cells + 1) * self.dx

    @property
    def shape(self) -> Tuple[int, ...]:
        if self.n_cells_y is None:
            return (self.n_cells,)
        return (self.n_cells_y, self.n_cells)

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy if self.is_2d else self.dx

    def matches(self, other: "Grid", rtol: float = 1e-12) -> bool:
        """Whether two grids have the same cells."""
        scale = max(abs(self.length), abs(self.origin), 1.0)
        return (
            self.shape == other.shape
            and abs(self.length - other.length) <= rtol * scale
            and abs(self.origin - other.origin) <= rtol * scale
            and (
                not self.is_2d
                or (
                    abs((self.width or 0.0) - (other.width or 0.0)) <= rtol * scale
                    and abs(self.origin_y - other.origin_y) <= rtol * scale
                )
            )
        )


@dataclasses.dataclass
class SolutionProfile:
    """
    A discretized solution: cell-centre depth, velocity and topography on a grid.

    ``q`` defaults to ``h * u``. Steady generators store the exact discharge instead so that
    it is not polluted by the rounding of ``h * u``.
    """

    grid: Grid
    h: np.ndarray
    u: np.ndarray
    z: np.ndarray
    time: float = 0.0
    v: Optional[np.ndarray] = None
    q: Optional[np.ndarray] = None
    metadata: Dict[str, Any] = dataclasses.field(default_factory=dict)
    dry_tolerance: float = DRY_TOLERANCE

    def __post_init__(self) -> None:
        shape = self.grid.shape
        self.h = np.asarray(self.h, dtype=float)
        self.u = np.asarray(self.u, dtype=float)
        self.z = np.asarray(self.z, dtype=float)
        for name in ("h", "u", "z"):
            _require(
                getattr(self, name).shape == shape,
                f"Field {name} has shape {getattr(self, name).shape}, grid has {shape}",
            )
        if self.v is not None:
            self.v = np.asarray(self.v, dtype=float)
            _require(self.v.shape == shape, "Field v does not match the grid")
        _require(bool(np.all(np.isfinite(self.h))), "Depth must be finite")
        _require(bool(np.all(self.h >= 0)), "Depth must be non-negative")
        dry = self.h < self.dry_tolerance
        _require(bool(np.all(self.u[dry] == 0)), "Velocity must vanish on dry cells")
        if self.v is not None:
            _require(bool(np.all(self.v[dry] == 0)), "Velocity must vanish on dry cells")
        if self.q is None:
            self.q = self.h * self.u
        else:
            self.q = np.asarray(self.q, dtype=float)
            _require(self.q.shape == shape, "Field q does not match the grid")

    @property
    def discharge(self) -> np.ndarray:
        assert self.q is not None
        return self.q

    @property
    def free_surface(self) -> np.ndarray:
        return self.h + self.z

    @property
    def wet(self) -> np.ndarray:
        return self.h >= self.dry_tolerance


class BoundaryKind(enum.Enum):
    """Ghost-cell boundary treatments of the reference solver."""

    WALL = "wall"
    FREE = "free"
    PERIODIC = "periodic"
    DISCHARGE = "discharge"
    DEPTH = "depth"
    STATE = "state"


@dataclasses.dataclass(frozen=True)
class Boundary:
    """
    One end of a channel.

    ``DISCHARGE`` imposes q, ``DEPTH`` imposes h and ``STATE`` imposes both.
    """

    kind: BoundaryKind = BoundaryKind.FREE
    depth: Optional[float] = None
    discharge: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind in (BoundaryKind.DEPTH, BoundaryKind.STATE):
            _require(
                self.depth is not None and self.depth >= 0, f"{self.kind.value} needs a depth"
            )
        if self.kind in (BoundaryKind.DISCHARGE, BoundaryKind.STATE):
            _require(self.discharge is not None, f"{self.kind.value} needs a discharge")

    @property
    def imposed_values(self) -> int:
        return {BoundaryKind.STATE: 2, BoundaryKind.DEPTH: 1, BoundaryKind.DISCHARGE: 1}.get(
            self.kind, 0
        )


@dataclasses.dataclass(frozen=True)
class CatalogSettings:
    """Settings shared by every case of a catalog."""

    gravity: float = GRAVITY
    dry_tolerance: float = DRY_TOLERANCE
    steady_threshold: float = 1e-10
    max_steps: int = 1_000_000
    instrumentation: str = "shallow_bench.harness.instrumentation.LogInstrument"

    def __post_init__(self) -> None:
        _require(self.gravity > 0, "Gravity must be positive")
        _require(self.dry_tolerance > 0, "Dry tolerance must be positive")
        _require(self.steady_threshold > 0, "Steady state threshold must be positive")
        _require(self.max_steps >= 1, "The step cap must be at least one")


DEFAULT_SETTINGS = CatalogSettings()


@dataclasses.dataclass
class CatalogEntry:
    """
    Dataclass describing a catalog solution.

    Contains everything needed to instantiate the case dynamically with its default
    parameters.
    """

    entry_id: str
    factory: str
    kwargs: Mapping[str, Primitives]
    dimension: int = 1
    regime: str = ""
    description: str = ""

    @property
    def family(self) -> str:
        return self.entry_id.split("/", maxsplit=1)[0]


class CatalogMap(abc.ABC):
    """
    Interface definition for a catalog map.

    Provides catalog entries by id.
    """

    @abc.abstractmethod
    def get_by_id(self, entry_id: str) -> CatalogEntry:
        """
        Retrieve a `CatalogEntry` by id.

        :param entry_id: the solution id
        :type entry_id: str
        :return: the found catalog entry
        :rtype: CatalogEntry
        """
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def __iter__(self) -> Iterator[CatalogEntry]:
        """Iterate over the entries in id order."""
        raise NotImplementedError  # pragma: no cover

    @property
    @abc.abstractmethod
    def settings(self) -> CatalogSettings:
        """Settings injected into every case."""
        raise NotImplementedError  # pragma: no cover
