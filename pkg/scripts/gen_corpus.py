from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from rbm.instances.generators import generate_instance  # noqa: E402
from rbm.instances.io import write_instance  # noqa: E402
from rbm.shared.enums import Distribution  # noqa: E402
from rbm.shared.errors import ValidationError  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description="Katalog instancji pod `rbm bench` (seedy od --first-seed)")
    parser.add_argument("--out-dir", type=Path, required=True)
    parser.add_argument("--count", type=int, default=10)
    parser.add_argument("--n", type=int, default=60)
    parser.add_argument("--k", type=int, default=8)
    parser.add_argument("--colors", type=int, default=6)
    parser.add_argument("--distribution", choices=[d.value for d in Distribution], default=Distribution.UNIFORM.value)
    parser.add_argument("--first-seed", type=int, default=1)
    args = parser.parse_args()

    written = []
    try:
        for seed in range(args.first_seed, args.first_seed + max(0, args.count)):
            inst = generate_instance(
                n=args.n,
                k=args.k,
                colors=args.colors,
                distribution=Distribution(args.distribution),
                seed=seed,
            )
            path = args.out_dir / f"{args.distribution}_n{args.n}_k{args.k}_s{seed:04d}.txt"
            write_instance(inst, path, comment=f"seed={seed} distribution={args.distribution}")
            written.append(path.name)
    except ValidationError as exc:
        print(json.dumps({"error": str(exc)}, ensure_ascii=False))
        return 2

    print(json.dumps({"written": len(written), "dir": str(args.out_dir)}, ensure_ascii=False))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
