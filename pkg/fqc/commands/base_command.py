"""
Base Command Class for the fqc command line

All commands inherit from this base class to ensure a consistent interface
"""

import logging
import os
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

from ..config import RunConfig, DEFAULT_CONFIG
from ..errors import FQCError
from ..interchange import write_json

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_INVALID, EXIT_REFUTED = 0, 2, 3


class BaseCommand(ABC):
    """
    Base class for all commands

    Each command must implement:
    - run(): Main functionality, may raise FQCError
    - get_description(): One-line description for --help
    - get_schema(): Parameter schema the argument parser is generated from
    """

    def __init__(self, name: str, config: RunConfig = DEFAULT_CONFIG, out_dir: str = ".",
                 fmt: str = "json"):
        self.name = name
        self.config = config
        self.out_dir = out_dir
        self.fmt = fmt

    @abstractmethod
    def run(self, **kwargs) -> Dict[str, Any]:
        """
        Do the work

        Returns:
            Dict with 'result' and optional 'files', 'verdict_ok' keys
        """

    @abstractmethod
    def get_description(self) -> str:
        pass

    @abstractmethod
    def get_schema(self) -> Dict[str, Any]:
        pass

    def execute(self, **kwargs) -> Dict[str, Any]:
        """
        Run the command and turn errors into a result dict

        Returns:
            Dict with 'success', 'exit_code', and 'result' or 'error' keys
        """
        try:
            outcome = self.run(**kwargs)
        except FQCError as e:
            logger.debug("%s failed: %s", self.name, e)
            return self.format_result(False, error=str(e), exit_code=e.exit_code)
        exit_code = EXIT_OK if outcome.get("verdict_ok", True) else EXIT_REFUTED
        return self.format_result(True, result=outcome.get("result"), exit_code=exit_code,
                                  files=outcome.get("files"))

    def format_result(self, success: bool, result: Any = None, error: Optional[str] = None,
                      exit_code: int = EXIT_OK, files: Optional[list] = None) -> Dict[str, Any]:
        """Helper to format command results consistently"""
        response = {"success": success, "exit_code": exit_code}
        if result is not None:
            response["result"] = result
        if error is not None:
            response["error"] = error
        if files:
            response["files"] = files
        return response

    def make_schema(self, properties: Dict[str, Any], required: Optional[list] = None) -> Dict[str, Any]:
        """Schema in function-calling layout; "positional": True marks positional arguments"""
        return {
            "type": "function",
            "function": {
                "name": self.name,
                "description": self.get_description(),
                "parameters": {
                    "type": "object",
                    "properties": properties,
                    "required": required or [],
                },
            },
        }

    def output_path(self, filename: str) -> str:
        os.makedirs(self.out_dir, exist_ok=True)
        return os.path.join(self.out_dir, filename)

    def save(self, filename: str, value: Any) -> str:
        return write_json(self.output_path(filename), value)

    def __str__(self):
        return f"{self.name}: {self.get_description()}"
