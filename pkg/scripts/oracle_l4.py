"""Independent oracle for L_4: enumerate compositions of 4, expand prod eps_{k-1}.

Uses only plain dicts and itertools; shares no code with the package.
"""
from itertools import product


def polymul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[ea + eb] = out.get(ea + eb, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def eps(k):
    p = {0: 1}
    for i in range(k):
        p = polymul(p, {0: 1, 2 * i + 1: 1})
    return p


def compositions(n):
    # each of the n-1 gaps is either a cut or not
    for cuts in product((0, 1), repeat=n - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def main():
    n = 4
    total = {}
    comps = list(compositions(n))
    for comp in comps:
        term = {0: 1}
        for k in comp:
            term = polymul(term, eps(k - 1))
        for e, c in term.items():
            total[e] = total.get(e, 0) + c
    print("compositions:", comps)
    print("L~_4 =", dict(sorted(total.items())))
    print("L_4  =", {e + 2 * n: c for e, c in sorted(total.items())})


if __name__ == "__main__":
    main()
