class DualDenseError(Exception):
    """Base class for errors raised by this package."""


class GraphError(DualDenseError, ValueError):
    """Invalid graph construction or query (unknown node, self-loop, empty graph...)."""


class ConfigError(DualDenseError, ValueError):
    """A configuration value is outside its allowed range."""


class ExhaustedError(DualDenseError):
    """Every peeling candidate has already been selected."""


class FormatError(DualDenseError, ValueError):
    """A file could not be parsed; carries the path and the offending line number."""

    def __init__(self, path, lineno, msg):
        self.path = str(path)
        self.lineno = lineno
        where = f"{self.path}:{lineno}" if lineno else self.path
        super().__init__(f"{where}: {msg}")
