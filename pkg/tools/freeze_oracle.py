"""Regenerate tests/data/oracle_mu.json from brute-force factorization counts.

Only the symmetric-group enumeration is used here, so the file is an
independent reference for every other route.

    python tools/freeze_oracle.py
"""
import json
from pathlib import Path

from hurwitz.cutjoin import genus_of
from hurwitz.factorize import count_transitive_dfs, count_transitive_factorizations
from hurwitz.foundation import fmt_rational, partitions_up_to, theta

MAX_N, MAX_R = 6, 10
DFS_MAX_N, DFS_MAX_R = 4, 5     # literal enumeration, small cases only


def main():
    rows = []
    for alpha in partitions_up_to(MAX_N):
        for r in range(MAX_R + 1):
            g = genus_of(r, alpha)
            if g is None:
                continue
            count = count_transitive_factorizations(alpha, r)
            if sum(alpha) <= DFS_MAX_N and r <= DFS_MAX_R:
                assert count == count_transitive_dfs(alpha, r), (alpha, r)
            rows.append({"genus": g, "alpha": list(alpha), "r": r, "transitive": count,
                         "mu": fmt_rational(count / theta(alpha))})
    out = Path(__file__).resolve().parents[1] / "tests" / "data" / "oracle_mu.json"
    out.write_text(json.dumps({"max_n": MAX_N, "max_r": MAX_R, "rows": rows}, indent=1) + "\n",
                   encoding="utf-8")
    print(f"wrote {len(rows)} rows to {out}")


if __name__ == "__main__":
    main()
