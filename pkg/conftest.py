import pathlib
import sys

# Allow running the test suite straight from a checkout; an installed
# package (pip install -e .) shadows this with the same files.
sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent / "src"))
