"""
Application Context and Configuration

Configuration management and dynamic class loading for dependency injection.

Key Concepts:
-------------
1. **ClassImportPath**: a dotted "module.ClassName" string resolved at wiring time
2. **Context**: which implementation fills each adapter slot, plus runtime settings
3. **Environment overlays**: ``Context.from_environment()`` reads ANTIDIM_* variables;
   the CLI overrides single fields with ``Context._replace``
"""

from typing import NamedTuple
import importlib
import os

from antidim.model.errors import DomainError


class ClassImportPath(NamedTuple):
    """
    Dotted "package.module.ClassName" naming the adapter that fills a slot.

    Attributes:
        module_name: e.g. 'antidim.adapter.distances'
        class_name: e.g. 'BreadthFirstDistances'

    Example Usage:
    --------------
    >>> path = ClassImportPath.from_string("antidim.adapter.distances.BreadthFirstDistances")
    >>> backend = path()()  # import the class, then instantiate it
    """

    module_name: str
    class_name: str

    def __str__(self):
        return f"{self.module_name}.{self.class_name}"

    @classmethod
    def from_string(cls, dotted: str) -> "ClassImportPath":
        """
        Raises:
            DomainError: no module part or no class part
        """
        module_name, _, class_name = dotted.strip().rpartition(".")
        if not module_name or not class_name:
            raise DomainError(f"adapter path must look like 'package.module.ClassName', got {dotted!r}")
        return cls(module_name, class_name)

    def import_class(self) -> type:
        """
        Raises:
            DomainError: the module or the class cannot be imported
        """
        try:
            return getattr(importlib.import_module(self.module_name), self.class_name)
        except (ImportError, AttributeError) as error:
            raise DomainError(f"cannot load adapter {self}: {error}") from error

    __call__ = import_class


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError as error:
        raise DomainError(f"{name} must be an integer, got {raw!r}") from error


def _env_float(name: str, default: float | None) -> float | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = float(raw)
    except ValueError as error:
        raise DomainError(f"{name} must be a number, got {raw!r}") from error
    return None if value <= 0 else value


class Context(NamedTuple):
    """
    Which implementation fills each adapter slot, and the runtime settings.

    Attributes:
    -----------
    environment : str
        'dev' or 'test'
    project_package_name : str
        Base package name
    parser_class : ClassImportPath
        Edge-list decoder
    distance_backend_class : ClassImportPath
        All-pairs shortest paths implementation
    set_cover_class : ClassImportPath
        Set-cover solver behind ADIM=1
    storage_class : ClassImportPath
        Result storage (json, csv or text)
    graph_writer_class : ClassImportPath
        Writer for generated edge lists and their manifest
    workers : int
        Worker processes for ensembles
    timeout_seconds : float | None
        Wall-clock budget per network; None for no limit
    oracle_limit : int
        Largest n the exhaustive fallbacks may enumerate
    log_level : str
        Root logging level

    Example Usage:
    --------------
    >>> context = Context.default()._replace(workers=4)
    >>> backend = context.distance_backend_class()()
    """

    environment: str
    project_package_name: str
    parser_class: ClassImportPath
    distance_backend_class: ClassImportPath
    set_cover_class: ClassImportPath
    storage_class: ClassImportPath
    graph_writer_class: ClassImportPath
    workers: int = 1
    timeout_seconds: float | None = 1800.0
    oracle_limit: int = 16
    log_level: str = "INFO"

    def __str__(self):
        return (
            f"Context("
            f"environment={self.environment}, "
            f"distance_backend_class={self.distance_backend_class}, "
            f"set_cover_class={self.set_cover_class}, "
            f"storage_class={self.storage_class}, "
            f"workers={self.workers}, "
            f"timeout_seconds={self.timeout_seconds}, "
            f"oracle_limit={self.oracle_limit}"
            ")"
        )

    @classmethod
    def default(cls):
        """
        Development configuration: BFS distances, greedy set cover, JSON results.
        """
        return cls(
            environment="dev",
            project_package_name="antidim",
            parser_class=ClassImportPath.from_string("antidim.adapter.parser.EdgeListParser"),
            distance_backend_class=ClassImportPath.from_string(
                "antidim.adapter.distances.BreadthFirstDistances"
            ),
            set_cover_class=ClassImportPath.from_string(
                "antidim.adapter.set_cover.JohnsonGreedySetCover"
            ),
            storage_class=ClassImportPath.from_string(
                "antidim.adapter.storage.JsonResultStorage"
            ),
            graph_writer_class=ClassImportPath.from_string(
                "antidim.adapter.storage.EdgeListDirectoryWriter"
            ),
        )

    @classmethod
    def from_environment(cls, base: "Context | None" = None):
        """
        ``base`` (or the default) with ANTIDIM_WORKERS, ANTIDIM_TIMEOUT,
        ANTIDIM_ORACLE_LIMIT and ANTIDIM_LOG_LEVEL applied where set. A timeout of
        zero or less means no limit.
        """
        base = base or cls.default()
        return base._replace(
            workers=_env_int("ANTIDIM_WORKERS", base.workers),
            timeout_seconds=_env_float("ANTIDIM_TIMEOUT", base.timeout_seconds),
            oracle_limit=_env_int("ANTIDIM_ORACLE_LIMIT", base.oracle_limit),
            log_level=os.environ.get("ANTIDIM_LOG_LEVEL") or base.log_level,
        )

    @classmethod
    def testing(cls):
        """Test configuration: Floyd-Warshall distances cross-check the BFS path."""
        return cls.default()._replace(
            environment="test",
            distance_backend_class=ClassImportPath.from_string(
                "antidim.adapter.distances.FloydWarshallDistances"
            ),
            timeout_seconds=None,
        )
