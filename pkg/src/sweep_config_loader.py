import logging
import re
from dataclasses import dataclass

from src.exceptions import ConfigError

STATISTICS = ("mean-entropy", "variance-entropy", "mean-capacity")
ROUTES = ("exact", "quadrature", "sums")
OUTPUTS = ("csv", "json")

_RANGE = re.compile(r"^(m|n)=([^.]+)\.\.(.+)$")
_BOUND = re.compile(r"^(?:(?P<const>\d+)|m(?:\+(?P<plus>\d+))?|(?P<times>\d+)\*m)$")


@dataclass(frozen=True)
class SweepConfig:
    seed: int
    tolerance: float
    statistics: tuple
    routes: tuple
    output: str
    cells: tuple


def _parse_bound(text, allow_m, line):
    match = _BOUND.match(text.replace(" ", ""))
    if not match or (not allow_m and match.group("const") is None):
        raise ConfigError("Invalid grid bound %r." % text, line=line, field="grid")
    if match.group("const") is not None:
        value = int(match.group("const"))
        return lambda m: value
    if match.group("times") is not None:
        factor = int(match.group("times"))
        return lambda m: factor * m
    offset = int(match.group("plus") or 0)
    return lambda m: m + offset


def _parse_list(value, allowed, key, line):
    items = tuple(item.strip() for item in value.split(",") if item.strip())
    if not items:
        raise ConfigError("Empty list.", line=line, field=key)
    for item in items:
        if item not in allowed:
            raise ConfigError("Unknown entry %r; expected one of %s." % (item, ", ".join(allowed)), line=line, field=key)
    return items


class SweepConfigLoader:
    '''
    Load a sweep configuration file.

    The file holds flat `key = value` lines and repeated grid stanzas such as
    `grid m=1..4 n=m..m+3`; `#` starts a comment.
    '''
    def __init__(self, file_path=None):
        '''
        :param file_path: Path to the configuration file.
        '''
        self.file_path = file_path

    def load_config(self):
        '''
        Read and validate the configuration.

        :return: SweepConfig with the grid cells in stanza order.
        '''
        if not self.file_path:
            raise ConfigError("No sweep configuration file specified.")
        with open(self.file_path, "r", encoding="utf-8") as file:
            return self.parse(file.read())

    def parse(self, text):
        '''
        Parse configuration text.

        :param text: Contents of a configuration file.
        :return: SweepConfig.
        '''
        logger = logging.getLogger("fermi_rmt")
        values = {"seed": 0, "tolerance": 1e-8, "statistics": STATISTICS, "routes": ("exact", "quadrature"),
                  "output": "csv"}
        cells = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("grid"):
                cells.extend(self._parse_grid(line[4:].split(), number))
                continue
            if "=" not in line:
                raise ConfigError("Expected 'key = value'.", line=number)
            key, value = (part.strip() for part in line.split("=", 1))
            if key == "seed":
                try:
                    values["seed"] = int(value)
                except ValueError:
                    raise ConfigError("Seed must be an integer, got %r." % value, line=number, field=key)
                if values["seed"] < 0:
                    raise ConfigError("Seed must be nonnegative.", line=number, field=key)
            elif key == "tolerance":
                try:
                    values["tolerance"] = float(value)
                except ValueError:
                    raise ConfigError("Tolerance must be a number, got %r." % value, line=number, field=key)
                if not values["tolerance"] > 0:
                    raise ConfigError("Tolerance must be positive.", line=number, field=key)
            elif key == "statistics":
                values["statistics"] = _parse_list(value, STATISTICS, key, number)
            elif key == "routes":
                values["routes"] = _parse_list(value, ROUTES, key, number)
            elif key == "output":
                if value not in OUTPUTS:
                    raise ConfigError("Output must be csv or json, got %r." % value, line=number, field=key)
                values["output"] = value
            else:
                raise ConfigError("Unknown key %r." % key, line=number, field=key)
        unique_cells = tuple(dict.fromkeys(cells))
        if not unique_cells:
            raise ConfigError("The sweep grid is empty.", field="grid")
        logger.info("Loaded sweep configuration with %d cells.", len(unique_cells))
        return SweepConfig(cells=unique_cells, **values)

    def _parse_grid(self, tokens, line):
        ranges = {}
        for token in tokens:
            match = _RANGE.match(token)
            if not match:
                raise ConfigError("Invalid grid token %r." % token, line=line, field="grid")
            ranges[match.group(1)] = (match.group(2), match.group(3))
        if set(ranges) != {"m", "n"}:
            raise ConfigError("A grid stanza needs both m and n ranges.", line=line, field="grid")
        m_low = _parse_bound(ranges["m"][0], False, line)(0)
        m_high = _parse_bound(ranges["m"][1], False, line)(0)
        n_low = _parse_bound(ranges["n"][0], True, line)
        n_high = _parse_bound(ranges["n"][1], True, line)
        if m_low < 1:
            raise ConfigError("Grid values of m must be at least 1.", line=line, field="grid")
        cells = []
        for m in range(m_low, m_high + 1):
            for n in range(max(n_low(m), m), n_high(m) + 1):
                cells.append((m, n))
        return cells
