"""
Command Registry - discovery of CLI subcommand modules.

Every module in cuspforge/commands/ that defines `setup(subparsers)` is a
subcommand. Header comments carry its metadata:

    # Command: check
    # Description: Proportionality check of a configuration
"""

import importlib
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)

COMMANDS_DIR = Path(__file__).parent.parent / "commands"
COMMANDS_PACKAGE = "cuspforge.commands"


class CommandInfo:
    """Information about a subcommand module."""

    def __init__(self, name: str, module: str, metadata: Dict[str, Any] = None):
        self.name = name
        self.module = module
        self.metadata = metadata or {}
        self.loaded = False
        self.error = None

    @property
    def description(self) -> str:
        return self.metadata.get("description", "")

    def to_dict(self) -> Dict[str, Any]:
        """Convert command info to dictionary."""
        return {
            "name": self.name,
            "module": self.module,
            "metadata": self.metadata,
            "loaded": self.loaded,
            "error": str(self.error) if self.error else None,
        }


class CommandRegistry:
    """Discovers subcommand modules and registers them with argparse."""

    def __init__(self, commands_dir: Path = None, package: str = COMMANDS_PACKAGE):
        self.commands_dir = commands_dir or COMMANDS_DIR
        self.package = package
        self.commands: Dict[str, CommandInfo] = {}

    def discover_commands(self) -> List[CommandInfo]:
        """Discover all subcommand modules."""
        discovered = []

        for command_file in sorted(self.commands_dir.glob("*.py")):
            if command_file.name.startswith("_"):
                continue

            metadata = self._load_command_metadata(command_file)
            name = metadata.get("name", command_file.stem)
            info = CommandInfo(
                name=name, module=f"{self.package}.{command_file.stem}", metadata=metadata
            )
            discovered.append(info)
            self.commands[name] = info

        logger.debug(f"Discovered {len(discovered)} commands")
        return discovered

    def _load_command_metadata(self, command_file: Path) -> Dict[str, Any]:
        """Load metadata from the header comments of a command module."""
        metadata = {}

        try:
            with open(command_file, "r", encoding="utf-8") as f:
                lines = f.read().split("\n")

            for line in lines[:30]:
                line = line.strip()
                if line.startswith("# Command:"):
                    metadata["name"] = line.split(":", 1)[1].strip()
                elif line.startswith("# Description:"):
                    metadata["description"] = line.split(":", 1)[1].strip()

        except OSError as e:
            logger.warning(f"Failed to load metadata for {command_file}: {e}")

        return metadata

    def register_all(self, subparsers) -> Dict[str, bool]:
        """Import every discovered command and let it add its subparser."""
        if not self.commands:
            self.discover_commands()
        results = {}

        for name, info in self.commands.items():
            try:
                module = importlib.import_module(info.module)
                module.setup(subparsers)
                info.loaded = True
                info.error = None
            except Exception as e:
                info.error = e
                info.loaded = False
                logger.error(f"Failed to register command {name}: {e}")
            results[name] = info.loaded

        return results

    def get_command_info(self, name: str) -> Optional[CommandInfo]:
        return self.commands.get(name)

    def get_loaded_commands(self) -> List[CommandInfo]:
        return [info for info in self.commands.values() if info.loaded]
