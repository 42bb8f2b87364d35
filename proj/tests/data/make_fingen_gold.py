"""Regenerates fingen_gold.csv from per-ring facts, independently of the C++ code."""
import csv
import sys

# name, (R,+) f.g., U(R) f.g., R f.g. as a U(R)-module
RINGS = [
    ("Z", True, True, True),
    ("F_2[t]", False, True, False),
    ("F_2[t,t^-1]", False, True, True),
    ("F_2[t,t^-1,(t^3+t+1)^-1]", False, True, True),
]
N = 4


def ng_failure(members):
    for i in range(1, N):
        if i not in members and i + 1 not in members:
            return i
    return None


def main():
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["ring", "I", "verdict", "condition", "failing_clause"])
    for name, additive, units, module in RINGS:
        for mask in range(1 << N):
            members = [i for i in range(1, N + 1) if mask >> (i - 1) & 1]
            label = "{" + ",".join(map(str, members)) + "}"
            if additive:
                w.writerow([name, label, "yes", "(i)", ""])
                continue
            bad = ng_failure(members)
            if not units:
                w.writerow([name, label, "no", "no", "units"])
            elif not module:
                w.writerow([name, label, "no", "no", "module"])
            elif bad is not None:
                w.writerow([name, label, "no", "no", f"NG i={bad}"])
            else:
                w.writerow([name, label, "yes", "(ii)", ""])


if __name__ == "__main__":
    main()
