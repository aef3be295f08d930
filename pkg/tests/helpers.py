"""Reference computations used by several test modules."""


def catalan(n):
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


def posthoc_time(table, cover, tables, v):
    """Elementary steps recounted over the finished table.

    Sums, for every rule application whose premises are all in the final
    table, the number of filter witnesses in the final U_i (1 for symbols the
    filter always admits).
    """
    g = cover.cfg
    enablers = {}
    for trigger, targets in tables.by_trigger.items():
        for sym in targets:
            enablers.setdefault(sym, set()).add(trigger)

    def cost(a, i):
        if a in tables.unconditional:
            return 1
        return len(enablers.get(a, set()) & table.row_union[i])

    n = table.n
    total = 0
    for a, rhs in g.rules:
        if not rhs:
            total += sum(cost(a, j) for j in range(n + 1))
        elif len(rhs) == 1 and rhs[0] in g.terminals:
            total += sum(cost(a, j - 1) for j in range(1, n + 1) if v[j - 1] == rhs[0])
        elif len(rhs) == 1:
            total += sum(cost(a, i) for (i, j), cell in table.cells.items() if rhs[0] in cell)
        else:
            b, c = rhs
            for (i, k), cell in table.cells.items():
                if b in cell:
                    total += sum(cost(a, i) for j in range(k, n + 1) if c in table.get(k, j))
    return total


# criterion number -> (title, passed, detail); filled by the acceptance tests
ACCEPTANCE: dict = {}


def report_line(number) -> str:
    title, passed, detail = ACCEPTANCE[number]
    return f"criterion {number} {'PASS' if passed else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
