#!/usr/bin/env python3
"""
Development utility script for cuspforge.
Provides environment setup, validation, linting and test commands.
"""

import argparse
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).parent
sys.path.insert(0, str(ROOT))


def check_requirements():
    """Check if all required packages are installed."""
    requirements_file = ROOT / "requirements.txt"

    if not requirements_file.exists():
        print("❌ requirements.txt not found")
        return False

    try:
        result = subprocess.run(
            [sys.executable, "-m", "pip", "check"], capture_output=True, text=True
        )

        if result.returncode != 0:
            print("❌ Some packages have dependency conflicts:")
            print(result.stdout)
            print(result.stderr)
            return False

        print("✅ All packages are properly installed")
        return True

    except Exception as e:
        print(f"❌ Error checking requirements: {e}")
        return False


def install_requirements():
    """Install requirements from requirements.txt."""
    requirements_file = ROOT / "requirements.txt"

    if not requirements_file.exists():
        print("❌ requirements.txt not found")
        return False

    try:
        print("📦 Installing requirements...")
        subprocess.run(
            [sys.executable, "-m", "pip", "install", "-r", str(requirements_file)],
            check=True,
        )
        print("✅ Requirements installed successfully")
        return True

    except subprocess.CalledProcessError as e:
        print(f"❌ Failed to install requirements: {e}")
        return False


def create_env_file():
    """Create .env file from template."""
    env_example = ROOT / ".env.example"
    env_file = ROOT / ".env"

    if env_file.exists():
        print("⚠️ .env file already exists")
        return True

    if not env_example.exists():
        print("❌ .env.example template not found")
        return False

    try:
        env_file.write_text(env_example.read_text())
        print("✅ Created .env file from template")
        return True

    except Exception as e:
        print(f"❌ Failed to create .env file: {e}")
        return False


def validate_env():
    """Validate the CUSPFORGE_* settings."""
    try:
        from cuspforge.utils.config import Config
    except ImportError as e:
        print(f"❌ Could not import cuspforge: {e}")
        return False

    errors = Config.validate()
    if errors:
        print("❌ Invalid configuration:")
        for error in errors:
            print(f"   - {error}")
        return False

    print(
        f"✅ Configuration is valid (coset cap {Config.COSET_CAP}, "
        f"{Config.WORKERS} worker(s), log level {Config.LOG_LEVEL})"
    )
    return True


def setup_dev_environment():
    """Set up the complete development environment."""
    print("🚀 Setting up development environment...\n")

    steps = [
        ("Creating .env file", create_env_file),
        ("Installing requirements", install_requirements),
        ("Checking requirements", check_requirements),
        ("Validating configuration", validate_env),
    ]

    success_count = 0
    for step_name, step_func in steps:
        print(f"📋 {step_name}...")
        if step_func():
            success_count += 1
        print()

    print(f"✅ Setup completed: {success_count}/{len(steps)} steps successful")

    if success_count == len(steps):
        print("🎉 Development environment is ready!")


def lint_code():
    """Run code linting."""
    try:
        result = subprocess.run(
            [sys.executable, "-m", "flake8", "cuspforge", "tests", "dev.py"],
            cwd=ROOT,
            capture_output=True,
            text=True,
        )

        if result.returncode == 0:
            print("✅ Code passes linting checks")
        else:
            print("⚠️ Linting issues found:")
            print(result.stdout)

    except FileNotFoundError:
        print("💡 flake8 not installed. Run `pip install flake8` for code linting")


def run_tests(quick: bool = False, extra=None):
    """Run the test suite, optionally with the reduced hypothesis profile."""
    command = [sys.executable, "-m", "pytest"]
    if quick:
        command.append("--hypothesis-profile=quick")
    command.extend(extra or [])
    return subprocess.run(command, cwd=ROOT).returncode


def run_cli(argv):
    """Run cuspforge with the given arguments."""
    from cuspforge.main import main as cuspforge_main

    return cuspforge_main(argv)


def main():
    """Main CLI interface."""
    parser = argparse.ArgumentParser(description="cuspforge Development Utilities")
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    subparsers.add_parser("setup", help="Set up development environment")
    subparsers.add_parser("validate", help="Validate environment")
    subparsers.add_parser("lint", help="Run code linting")
    subparsers.add_parser("check", help="Check requirements and dependencies")

    test_parser = subparsers.add_parser("test", help="Run the test suite")
    test_parser.add_argument("--quick", action="store_true", help="Fewer hypothesis examples")
    test_parser.add_argument("pytest_args", nargs=argparse.REMAINDER)

    run_parser = subparsers.add_parser("run", help="Run a cuspforge command")
    run_parser.add_argument("cli_args", nargs=argparse.REMAINDER)

    args = parser.parse_args()

    if not args.command:
        parser.print_help()
        return 0

    if args.command == "setup":
        setup_dev_environment()
    elif args.command == "validate":
        return 0 if validate_env() else 1
    elif args.command == "lint":
        lint_code()
    elif args.command == "check":
        check_requirements()
    elif args.command == "test":
        return run_tests(args.quick, args.pytest_args)
    elif args.command == "run":
        return run_cli(args.cli_args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
