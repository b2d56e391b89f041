#!/usr/bin/env python3
"""
Quantum cluster verifier: setup and diagnostic script.
Run this before the verification suite to confirm the environment is complete.
"""

import sys
from pathlib import Path


def print_header(text):
    print("\n" + "=" * 60)
    print(f"  {text}")
    print("=" * 60)


def check_file(filepath, description):
    if Path(filepath).exists():
        print(f"✓ {description}: {filepath}")
        return True
    print(f"✗ MISSING: {description}: {filepath}")
    return False


def check_directory(dirpath, description):
    if Path(dirpath).is_dir():
        print(f"✓ {description}: {dirpath}")
        return True
    print(f"✗ MISSING: {description}: {dirpath}")
    return False


def check_dependencies():
    """Import every runtime and test dependency"""
    print_header("CHECKING DEPENDENCIES")

    required = {
        "sympy": "sympy",
        "mpmath": "mpmath",
        "numpy": "numpy",
        "scipy": "scipy",
        "pydantic": "pydantic",
        "jinja2": "jinja2",
        "yaml": "pyyaml",
        "pytest": "pytest",
        "hypothesis": "hypothesis",
    }

    missing = []
    for module, package in required.items():
        try:
            __import__(module)
            print(f"✓ {package}")
        except ImportError:
            print(f"✗ MISSING: {package}")
            missing.append(package)

    if missing:
        print("\n⚠️  Install missing packages:")
        print(f"pip install {' '.join(missing)}")
        return False
    return True


def check_project_structure():
    print_header("CHECKING PROJECT STRUCTURE")

    required_dirs = {
        "core": "Coefficient field and errors",
        "algebra": "Quantum torus and series",
        "representations": "Generator matrices",
        "group": "Building blocks and group element",
        "verification": "Checks and reports",
        "configs/profiles": "Run profiles",
    }
    ok = all([check_directory(d, desc) for d, desc in required_dirs.items()])

    required_files = {
        "main.py": "Command-line entry",
        "configs/profiles/acceptance.yaml": "Acceptance profile",
        "configs/profiles/quick.yaml": "Quick profile",
    }
    ok = all([check_file(f, desc) for f, desc in required_files.items()]) and ok

    if not ok:
        print("\n⚠️  WARNING: Missing project files/directories")
    return ok


def test_imports():
    print_header("TESTING IMPORTS")

    modules = [
        ("core.qscalar", "QScalar"),
        ("algebra.torus", "TorusElement"),
        ("algebra.skew_series", "SkewSeries"),
        ("representations.generators", "fundamental_rep"),
        ("group.element", "group_element"),
        ("verification.registry", "get_check"),
    ]
    for module, name in modules:
        try:
            getattr(__import__(module, fromlist=[name]), name)
            print(f"✓ {module}.{name}")
        except Exception as e:
            print(f"✗ {module}.{name}: {e}")
            return False
    return True


def smoke_check():
    """Smallest defining-equation run; exact, takes well under a second"""
    print_header("SMOKE CHECK")

    try:
        from verification.defining import verify_defining_equation
        report = verify_defining_equation(1)
    except Exception as e:
        print(f"✗ defining equation for n = 1 raised: {e}")
        return False

    if report.passed:
        print(f"✓ Delta(g) = g (x) g for SL_q(2) in {report.elapsed_ms} ms")
        return True
    print(f"✗ defining equation for n = 1: {report.mismatch}")
    return False


def print_usage():
    print_header("USAGE")
    print("""
Run single checks:

   python main.py check defining --n 2
   python main.py check mutation --rep sym:5
   python main.py check hyper --max-n 25 --max-k 10 --x 2 --x 10

Run the full suite (or the reduced one):

   python main.py check all
   python main.py check all --quick --format structured --no-timing

Print objects:

   python main.py emit seed --n 2
   python main.py emit group-element --n 1 --form fg

Tests:

   pytest -m "not slow"
   pytest
""")


def main():
    print("""
    ╔═══════════════════════════════════════════════════════╗
    ║        Quantum Cluster Verifier Setup Check           ║
    ╚═══════════════════════════════════════════════════════╝
    """)

    checks = [
        ("Dependencies", check_dependencies),
        ("Project Structure", check_project_structure),
        ("Imports", test_imports),
        ("Smoke Check", smoke_check),
    ]

    results = {}
    for name, check_func in checks:
        results[name] = check_func()
        if name == "Dependencies" and not results[name]:
            break

    print_header("SUMMARY")
    for name, passed in results.items():
        status = "✓ PASSED" if passed else "✗ FAILED"
        print(f"{status}: {name}")

    if results and all(results.values()) and len(results) == len(checks):
        print("\n🎉 All checks passed.")
        print_usage()
        return 0
    print("\n⚠️  Some checks failed. Please fix the issues above.")
    return 1


if __name__ == "__main__":
    sys.exit(main())
