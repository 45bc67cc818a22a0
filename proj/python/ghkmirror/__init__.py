"""Landau-Ginzburg mirrors of del Pezzo surfaces and the Gamma conjecture."""

import json

from ._ghkmirror import (
    ConfigError,
    Pipeline as _Pipeline,
    config_schema,
    gamma_integral_checks,
    parse_t,
    presets,
    subcommands,
)

__all__ = [
    "ConfigError",
    "Pipeline",
    "config_schema",
    "gamma_integral_checks",
    "parse_t",
    "presets",
    "subcommands",
    "pipeline",
]


class Pipeline(_Pipeline):
    """A configured run.  Keyword arguments are configuration keys; use
    ``quad_rel_tol`` for ``quad.rel_tol``, ``lambdas`` for ``lambda`` and
    lists for comma-separated values."""

    def __init__(self, config="", **keys):
        lines = [config] if config else []
        for key, value in keys.items():
            if isinstance(value, (list, tuple)):
                value = ", ".join(str(v) for v in value)
            elif isinstance(value, bool):
                value = "true" if value else "false"
            key = "lambda" if key == "lambdas" else key.replace("quad_", "quad.", 1)
            lines.append(f"{key} = {value}")
        super().__init__("\n".join(lines) + "\n")

    def report_data(self, kind):
        """The named report parsed into Python objects."""
        return json.loads(self.report(kind))


def pipeline(preset="BlpP2", **keys):
    return Pipeline(preset=preset, **keys)
