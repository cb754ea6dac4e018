import sys
from pathlib import Path

# Load solver modules
BASE_DIR = Path(__file__).resolve().parent
sys.path.append(str(BASE_DIR / "source"))
from source import cli


def main():
    """
    Entry point, e.g.

        python main.py solve
        python main.py profile --s 1.0 --out profile.csv
        python main.py lifetime --s 0.25 --energy 1.5828
        python main.py sweep --param s --lo 0 --hi 0.49 --steps 8 --energy 1.5828
    """
    return cli.main(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
