"""The hexagon presentation written out directly from its published form, used
as an independent reference for the builder."""

from raagpres.words import Word, commutator, parse_word


def p6_relators(n):
    lam = parse_word("lambda")

    def powers(syms, k):
        return parse_word(" ".join(f"{s}^{k}" for s in syms))

    rels = [commutator(parse_word("t2"), lam)]
    chain = ["t2"]
    for k in (3, 4, 5, 6):
        stem = powers(list(reversed(chain)), n) * lam
        rels.append(commutator(parse_word(f"t{k}"), stem))
        chain.append(f"t{k}")
    # w_j = t5^{j+1} t4^{j+1} t3^{j+1} t2^{j+1} w_0^-1 ... w_{j-1}^-1 (unreduced, recursive)
    ws = []
    for j in range(n):
        w = powers(["t5", "t4", "t3", "t2"], j + 1)
        for prev in ws:
            w = w * ~prev
        ws.append(w)
    alpha5 = powers(["t5", "t4", "t3", "t2"], n) * lam
    t6 = parse_word("t6")
    family = [t6 * ws[0] * ~t6 * ~(~alpha5 * ws[n - 1] * alpha5)]
    for j in range(1, n):
        family.append(t6 * ws[j] * ~t6 * ~ws[j - 1])
    return rels, family
