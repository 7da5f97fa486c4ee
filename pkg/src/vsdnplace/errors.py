"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class VsdnPlaceError(Exception):
    code = "error"
    exit_status = 1


class ConfigError(VsdnPlaceError):
    code = "config"


class TopologyError(VsdnPlaceError):
    code = "topology"


class GraphMLParseError(TopologyError):
    code = "parse"


class GeoError(TopologyError):
    code = "geo"


class ConnectivityError(TopologyError):
    code = "connectivity"


class DegenerateInputError(VsdnPlaceError):
    code = "degenerate"


class CapacityError(VsdnPlaceError):
    code = "capacity"
    exit_status = 2
