"""Assemble the bundled English demo corpus.

The corpus is the handwritten networking glossary in
data/corpus_sources/ followed by docstrings harvested from the Python
standard library (sorted by file path, test packages skipped), cut off at
roughly --size bytes.  The committed copy was built with CPython 3.10.

    python scripts/build_corpus.py [--stdlib DIR] [--size BYTES]
"""

import argparse
import ast
import sys
import sysconfig
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
GLOSSARY = ROOT / "data" / "corpus_sources" / "networking_glossary.txt"
OUTPUT = ROOT / "src" / "postedit" / "data" / "corpus" / "en_tech_corpus.txt"


def docstrings(stdlib: Path):
    for path in sorted(stdlib.rglob("*.py")):
        rel = path.relative_to(stdlib).parts
        if any(p in ("test", "tests", "idle_test", "site-packages", "dist-packages") for p in rel):
            continue
        try:
            tree = ast.parse(path.read_text(encoding="utf-8"))
        except (SyntaxError, UnicodeDecodeError, ValueError):
            continue
        for node in ast.walk(tree):
            if isinstance(node, (ast.Module, ast.ClassDef, ast.FunctionDef, ast.AsyncFunctionDef)):
                doc = ast.get_docstring(node)
                if doc and len(doc.split()) >= 8:
                    yield " ".join(doc.split())


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--stdlib", type=Path, default=Path(sysconfig.get_paths()["stdlib"]))
    parser.add_argument("--size", type=int, default=1_000_000)
    parser.add_argument("-o", "--output", type=Path, default=OUTPUT)
    args = parser.parse_args()

    parts = [p.strip() for p in GLOSSARY.read_text(encoding="utf-8").split("\n\n") if p.strip()]
    size = sum(len(p.encode()) + 1 for p in parts)
    for doc in docstrings(args.stdlib):
        if size >= args.size:
            break
        parts.append(doc)
        size += len(doc.encode()) + 1
    args.output.parent.mkdir(parents=True, exist_ok=True)
    args.output.write_text("\n".join(parts) + "\n", encoding="utf-8", newline="\n")
    print(f"{args.output}: {size} bytes, {len(parts)} paragraphs", file=sys.stderr)


if __name__ == "__main__":
    main()
