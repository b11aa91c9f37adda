import sys

from src.cli import main as cli_main
from src.utils import print_step


def run_catalog_check():
    """Classify every catalog entry against its expected label"""
    print_step(1, "catalog check")
    return cli_main(["catalog", "check"])


def run_verification(source):
    """Every stage that applies to one algebra"""
    print_step(2, f"verification of {source}")
    return cli_main(["verify", source])


def run_coextensive(source):
    print_step(3, f"idempotent splits of {source}")
    return cli_main(["verify-coextensive", source])


def main():
    if len(sys.argv) > 1:
        sys.exit(cli_main(sys.argv[1:]))

    print("🎯 MV-Product Verifier - Interactive Runs")
    print("==================================================")
    print("1. 📚 Check the catalog")
    print("2. 🔍 Verify an algebra (file or catalog:<expression>)")
    print("3. 🧩 Split an algebra at its idempotents")
    print()

    try:
        choice = input("Select option (1-3): ").strip()

        if choice == "1":
            code = run_catalog_check()
        elif choice in ("2", "3"):
            source = input("Algebra: ").strip()
            code = run_verification(source) if choice == "2" else run_coextensive(source)
        else:
            print("❌ Invalid choice. Please select 1-3.")
            code = 2
        sys.exit(code)

    except KeyboardInterrupt:
        print("\n👋 Exiting. Goodbye!")


if __name__ == "__main__":
    main()
