"""Exact Δ-sets of one-relator modules over quantum tori and symplectic bases
of alternating forms.

Values cross the boundary as JSON documents, the same ones the ``qtdelta``
command-line tool reads and writes. Rationals are strings such as ``"-2/3"``.
"""

import json

from . import _core

__all__ = [
    "CommandError",
    "run",
    "subcommands",
    "delta_set",
    "local_cone",
    "fan_equal",
    "symplectic_base",
    "structure_report",
]


class CommandError(RuntimeError):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def subcommands():
    return list(_core.subcommands())


def run(command, data=None, *, check=False, **options):
    """Run a subcommand on a document and return ``(exit_code, result)``.

    Keyword options map to flags: ``seed=3`` becomes ``--seed 3``. Exit code 1
    marks a reported violation and still carries a result; exit code 2 raises
    CommandError, as does exit code 1 when ``check`` is set.
    """
    args = [command]
    for key, value in options.items():
        args += ["--" + key.replace("_", "-"), str(value)]
    stdin = "" if data is None else json.dumps(data)
    code, out, err = _core.run(args, stdin)
    if code == 2 or (check and code != 0):
        raise CommandError(code, err.strip())
    return code, json.loads(out)


def delta_set(module):
    return json.loads(_core.delta_set(json.dumps(module)))


def local_cone(fan, point):
    return json.loads(_core.local_cone(json.dumps(fan), json.dumps(point)))


def fan_equal(a, b):
    return _core.fan_equal(json.dumps(a), json.dumps(b))


def symplectic_base(form, seed=0, retries=8):
    """Symplectic base document, or ``{"no_base_found": true, ...}``."""
    return json.loads(_core.symplectic_base(json.dumps(form), seed, retries))


def structure_report(presentation, seed=0, retries=8):
    return json.loads(_core.structure_report(json.dumps(presentation), seed, retries))
