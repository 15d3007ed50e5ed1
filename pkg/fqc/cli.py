"""
fqc command line

Usage:
    python -m fqc [--config FILE] [--threads N] [--out DIR] [--format json|csv] [-v] COMMAND ...

Subcommand arguments are generated from each command's parameter schema.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from .commands import COMMANDS, EXIT_INVALID
from .config import load_config
from .errors import FQCError
from .interchange import dumps

logger = logging.getLogger("fqc")

ARG_TYPES = {"number": float, "integer": int, "string": str}


def _add_schema_arguments(parser: argparse.ArgumentParser, schema: Dict[str, Any]) -> None:
    params = schema["function"]["parameters"]
    required = set(params.get("required", []))
    for name, prop in params["properties"].items():
        kwargs: Dict[str, Any] = {"help": prop.get("description")}
        kind = prop.get("type", "string")
        if kind == "boolean":
            parser.add_argument(f"--{name.replace('_', '-')}", dest=name, action="store_true", **kwargs)
            continue
        if kind == "array":
            kwargs["type"] = ARG_TYPES[prop.get("items", {}).get("type", "number")]
            kwargs["nargs"] = "+"
        else:
            kwargs["type"] = ARG_TYPES[kind]
        if "enum" in prop:
            kwargs["choices"] = prop["enum"]
        if prop.get("positional"):
            parser.add_argument(name, **kwargs)
        else:
            parser.add_argument(f"--{name.replace('_', '-')}", dest=name, required=name in required,
                                default=argparse.SUPPRESS, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fqc", description="Fourier quasicrystal toolkit")
    parser.add_argument("--config", help="RunConfig JSON (falls back to $FQC_CONFIG)")
    parser.add_argument("--threads", type=int, help="Worker threads for exponential sums")
    parser.add_argument("--out", default=".", help="Output directory")
    parser.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, cls in COMMANDS.items():
        command = cls()
        sp = sub.add_parser(name, help=command.get_description(), description=command.get_description())
        _add_schema_arguments(sp, command.get_schema())
    return parser


def setup_logging(verbose: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.handlers[:] = [handler]
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)


GLOBAL_KEYS = ("config", "threads", "out", "fmt", "verbose", "command")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    try:
        config = load_config(args.config, args.threads)
    except FQCError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_INVALID

    command = COMMANDS[args.command](config=config, out_dir=args.out, fmt=args.fmt)
    params = {k: v for k, v in vars(args).items() if k not in GLOBAL_KEYS}
    logger.debug("🔧 %s %s", args.command, params)
    response = command.execute(**params)

    if response["success"]:
        glyph = "✅" if response["exit_code"] == 0 else "❌"
        print(f"{glyph} {args.command}: {dumps(response.get('result'))}")
        for path in response.get("files", []):
            print(f"   wrote {path}")
    else:
        print(f"❌ {args.command}: {response['error']}", file=sys.stderr)
    return response["exit_code"]
