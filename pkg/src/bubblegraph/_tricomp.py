"""Triconnected components of a biconnected multigraph.

Iterative port of the Hopcroft-Tarjan path-search algorithm with the
Gutwenger-Mutzel corrections.  Recursion is replaced by explicit frames so
that deep DFS trees do not hit the interpreter stack limit.  Adjacency lists
are doubly linked over integer slots, which gives O(1) deletion and in-place
replacement of an entry.

The result is a list of ``(kind, edge_ids)`` where ``kind`` is ``"P"``,
``"S"`` or ``"R"`` and edge ids index the returned ``src``/``dst`` arrays.
Ids below the input edge count are real edges, the rest are virtual edges,
each of which occurs in exactly two components.
"""

from __future__ import annotations

from .errors import ContractViolation

UNSEEN, TREE, FROND, REMOVED = 0, 1, 2, 3


def triconnected_components(n: int, eu: list[int], ev: list[int]):
    """Split components of the multigraph on ``n`` vertices, merged into S/P/R nodes."""
    if n < 3:
        raise ContractViolation("triconnected components need at least three vertices")
    src = list(eu)
    dst = list(ev)
    m0 = len(src)
    etype = [UNSEEN] * m0
    comps: list[list] = []  # [kind_hint, edges]

    def new_edge(a: int, b: int) -> int:
        src.append(a)
        dst.append(b)
        etype.append(UNSEEN)
        return len(src) - 1

    # split off multi-edges into bonds
    groups: dict[tuple[int, int], list[int]] = {}
    for e in range(m0):
        a, b = src[e], dst[e]
        key = (a, b) if a < b else (b, a)
        g = groups.get(key)
        if g is None:
            groups[key] = [e]
        else:
            g.append(e)
    for key, g in groups.items():
        if len(g) > 1:
            for e in g:
                etype[e] = REMOVED
            ve = new_edge(key[0], key[1])
            comps.append(["P", g + [ve]])

    m1 = len(src)
    adj: list[list[int]] = [[] for _ in range(n)]
    for e in range(m1):
        if etype[e] != REMOVED:
            adj[src[e]].append(e)
            adj[dst[e]].append(e)

    # first DFS: numbering, lowpoints, descendants, edge types
    number = [0] * n
    father = [-1] * n
    low1 = [0] * n
    low2 = [0] * n
    nd = [1] * n
    degree = [len(a) for a in adj]
    tree_arc = [-1] * n
    start = 0
    count = 1
    number[start] = low1[start] = low2[start] = 1
    ptr = [0] * n
    stack = [start]
    while stack:
        v = stack[-1]
        av = adj[v]
        i = ptr[v]
        if i < len(av):
            ptr[v] = i + 1
            e = av[i]
            if etype[e] != UNSEEN:
                continue
            w = dst[e] if src[e] == v else src[e]
            if number[w] == 0:
                etype[e] = TREE
                tree_arc[w] = e
                count += 1
                number[w] = low1[w] = low2[w] = count
                father[w] = v
                stack.append(w)
            else:
                etype[e] = FROND
                nw = number[w]
                if nw < low1[v]:
                    low2[v] = low1[v]
                    low1[v] = nw
                elif nw > low1[v]:
                    if nw < low2[v]:
                        low2[v] = nw
        else:
            stack.pop()
            u = father[v]
            if u >= 0:
                if low1[v] < low1[u]:
                    low2[u] = min(low1[u], low2[v])
                    low1[u] = low1[v]
                elif low1[v] == low1[u]:
                    low2[u] = min(low2[u], low2[v])
                else:
                    low2[u] = min(low2[u], low1[v])
                nd[u] += nd[v]
    if count != n:
        raise ContractViolation("input block is not connected")
    root_children = 0
    for v in range(n):
        u = father[v]
        if u == start:
            root_children += 1
        elif u >= 0 and low1[v] >= number[u]:
            raise ContractViolation("input block is not biconnected", witness=u)
    if root_children > 1:
        raise ContractViolation("input block is not biconnected", witness=start)

    # orient: tree arcs downwards, fronds upwards
    for e in range(m1):
        t = etype[e]
        if t == REMOVED:
            continue
        up = number[dst[e]] > number[src[e]]
        if (up and t == FROND) or (not up and t == TREE):
            src[e], dst[e] = dst[e], src[e]

    # acceptable adjacency structure, as doubly linked slot lists
    buckets: list[list[int]] = [[] for _ in range(3 * n + 3)]
    for e in range(m1):
        t = etype[e]
        if t == REMOVED:
            continue
        w = dst[e]
        if t == FROND:
            phi = 3 * number[w] + 1
        elif low2[w] < number[src[e]]:
            phi = 3 * low1[w]
        else:
            phi = 3 * low1[w] + 2
        buckets[phi].append(e)

    slot_e: list[int] = []
    slot_nxt: list[int] = []
    slot_prv: list[int] = []
    slot_own: list[int] = []
    head = [-1] * n
    tail = [-1] * n
    size = [0] * n
    in_adj: list[int] = [-1] * m1

    def push_back(v: int, e: int) -> int:
        s = len(slot_e)
        slot_e.append(e)
        slot_nxt.append(-1)
        slot_prv.append(tail[v])
        slot_own.append(v)
        if tail[v] == -1:
            head[v] = s
        else:
            slot_nxt[tail[v]] = s
        tail[v] = s
        size[v] += 1
        return s

    def adj_del(s: int) -> None:
        v = slot_own[s]
        p, q = slot_prv[s], slot_nxt[s]
        if p == -1:
            head[v] = q
        else:
            slot_nxt[p] = q
        if q == -1:
            tail[v] = p
        else:
            slot_prv[q] = p
        size[v] -= 1

    for bucket in buckets:
        for e in bucket:
            in_adj[e] = push_back(src[e], e)

    # second DFS: new numbering, path starts and highpoint lists
    hp_val: list[int] = []
    hp_nxt: list[int] = []
    hp_prv: list[int] = []
    hp_own: list[int] = []
    hp_head = [-1] * n
    hp_tail = [-1] * n
    in_high: list[int] = [-1] * m1
    is_start = [False] * m1

    def hp_push(v: int, val: int, front: bool) -> int:
        s = len(hp_val)
        hp_val.append(val)
        hp_own.append(v)
        if front:
            hp_prv.append(-1)
            hp_nxt.append(hp_head[v])
            if hp_head[v] == -1:
                hp_tail[v] = s
            else:
                hp_prv[hp_head[v]] = s
            hp_head[v] = s
        else:
            hp_nxt.append(-1)
            hp_prv.append(hp_tail[v])
            if hp_tail[v] == -1:
                hp_head[v] = s
            else:
                hp_nxt[hp_tail[v]] = s
            hp_tail[v] = s
        return s

    def del_high(e: int) -> None:
        s = in_high[e]
        if s != -1:
            v = hp_own[s]
            p, q = hp_prv[s], hp_nxt[s]
            if p == -1:
                hp_head[v] = q
            else:
                hp_nxt[p] = q
            if q == -1:
                hp_tail[v] = p
            else:
                hp_prv[q] = p
            in_high[e] = -1

    newnum = [0] * n
    num_count = n
    new_path = True
    cur = [-1] * n
    newnum[start] = num_count - nd[start] + 1
    cur[start] = head[start]
    stack = [start]
    while stack:
        v = stack[-1]
        s = cur[v]
        if s == -1:
            stack.pop()
            if stack:
                num_count -= 1
            continue
        cur[v] = slot_nxt[s]
        e = slot_e[s]
        w = dst[e]
        if new_path:
            new_path = False
            is_start[e] = True
        if etype[e] == TREE:
            newnum[w] = num_count - nd[w] + 1
            cur[w] = head[w]
            stack.append(w)
        else:
            in_high[e] = hp_push(w, newnum[v], False)
            new_path = True

    nodeat = [0] * (n + 1)
    old2new = [0] * (n + 1)
    for v in range(n):
        old2new[number[v]] = newnum[v]
    for v in range(n):
        nodeat[newnum[v]] = v
        low1[v] = old2new[low1[v]]
        low2[v] = old2new[low2[v]]

    def grow(e: int) -> None:
        # keep per-edge arrays in step with newly created virtual edges
        while len(etype) > len(in_adj):
            in_adj.append(-1)
            in_high.append(-1)
            is_start.append(False)

    def high(v: int) -> int:
        s = hp_head[v]
        return hp_val[s] if s != -1 else 0

    # path search
    ts_h = [-1]
    ts_a = [-1]
    ts_b = [-1]
    estack: list[int] = []

    def make_virtual(a: int, b: int) -> int:
        e = new_edge(a, b)
        grow(e)
        return e

    # frame: [v, it, it_next, outv, pending_e, pending_w]
    frames = [[start, head[start], -1, size[start], -1, -1]]
    while frames:
        f = frames[-1]
        v = f[0]
        vnum = newnum[v]
        if f[4] != -1:
            # returned from the child along tree arc f[4]
            e = f[4]
            w = f[5]
            it = f[1]
            f[4] = -1
            wnum = newnum[w]
            estack.append(tree_arc[w])
            while vnum != 1:
                if ts_a[-1] == vnum:
                    pass
                elif degree[w] == 2:
                    fc = head[w]
                    if fc == -1 or newnum[dst[slot_e[fc]]] <= wnum:
                        break
                else:
                    break
                a = ts_a[-1]
                b = ts_b[-1]
                if a == vnum and father[nodeat[b]] == nodeat[a]:
                    ts_h.pop(), ts_a.pop(), ts_b.pop()
                    continue
                e_ab = -1
                fc = head[w]
                if degree[w] == 2 and fc != -1 and newnum[dst[slot_e[fc]]] > wnum:
                    e1 = estack.pop()
                    e2 = estack.pop()
                    adj_del(in_adj[e2])
                    x = dst[e2]
                    e_virt = make_virtual(v, x)
                    degree[x] -= 1
                    degree[v] -= 1
                    comps.append(["S", [e1, e2, e_virt]])
                    if estack:
                        t1 = estack[-1]
                        if src[t1] == x and dst[t1] == v:
                            e_ab = estack.pop()
                            adj_del(in_adj[e_ab])
                            del_high(e_ab)
                else:
                    h = ts_h.pop()
                    ts_a.pop()
                    ts_b.pop()
                    comp: list[int] = []
                    while estack:
                        xy = estack[-1]
                        xs, xt = src[xy], dst[xy]
                        nx, nt = newnum[xs], newnum[xt]
                        if not (a <= nx <= h and a <= nt <= h):
                            break
                        if (nx == a and nt == b) or (nt == a and nx == b):
                            e_ab = estack.pop()
                            adj_del(in_adj[e_ab])
                            del_high(e_ab)
                        else:
                            eh = estack.pop()
                            if it != in_adj[eh]:
                                adj_del(in_adj[eh])
                                del_high(eh)
                            comp.append(eh)
                            degree[xs] -= 1
                            degree[xt] -= 1
                    e_virt = make_virtual(nodeat[a], nodeat[b])
                    comp.append(e_virt)
                    comps.append(["?", comp])
                    x = nodeat[b]
                if e_ab != -1:
                    bond = [e_ab, e_virt]
                    e_virt = make_virtual(v, x)
                    bond.append(e_virt)
                    comps.append(["P", bond])
                    degree[x] -= 1
                    degree[v] -= 1
                estack.append(e_virt)
                slot_e[it] = e_virt
                in_adj[e_virt] = it
                degree[x] += 1
                degree[v] += 1
                father[x] = v
                tree_arc[x] = e_virt
                etype[e_virt] = TREE
                w = x
                wnum = newnum[w]

            lw = low1[w]
            if low2[w] >= vnum and lw < vnum and (father[v] != start or f[3] >= 2):
                comp = []
                hi = wnum + nd[w]
                while estack:
                    xy = estack[-1]
                    xs, xt = src[xy], dst[xy]
                    nx, nt = newnum[xs], newnum[xt]
                    if not ((wnum <= nx < hi) or (wnum <= nt < hi)):
                        break
                    estack.pop()
                    comp.append(xy)
                    del_high(xy)
                    degree[xs] -= 1
                    degree[xt] -= 1
                lnode = nodeat[lw]
                e_virt = make_virtual(v, lnode)
                comp.append(e_virt)
                comps.append(["?", comp])
                if estack:
                    eh = estack[-1]
                    if (src[eh] == v and dst[eh] == lnode) or (src[eh] == lnode and dst[eh] == v):
                        estack.pop()
                        if it != in_adj[eh]:
                            adj_del(in_adj[eh])
                        bond = [eh, e_virt]
                        e_virt = make_virtual(v, lnode)
                        bond.append(e_virt)
                        comps.append(["P", bond])
                        in_high[e_virt] = in_high[eh]
                        degree[v] -= 1
                        degree[lnode] -= 1
                if lnode != father[v]:
                    estack.append(e_virt)
                    slot_e[it] = e_virt
                    in_adj[e_virt] = it
                    if in_high[e_virt] == -1 and high(lnode) < vnum:
                        in_high[e_virt] = hp_push(lnode, vnum, True)
                    degree[v] += 1
                    degree[lnode] += 1
                else:
                    adj_del(it)
                    bond = [e_virt]
                    e_virt = make_virtual(lnode, v)
                    bond.append(e_virt)
                    eh = tree_arc[v]
                    bond.append(eh)
                    comps.append(["P", bond])
                    tree_arc[v] = e_virt
                    etype[e_virt] = TREE
                    in_adj[e_virt] = in_adj[eh]
                    slot_e[in_adj[eh]] = e_virt
            if is_start[e]:
                while ts_a[-1] != -1:
                    ts_h.pop(), ts_a.pop(), ts_b.pop()
                ts_h.pop(), ts_a.pop(), ts_b.pop()
            hv = high(v)
            while ts_a[-1] != -1 and ts_b[-1] != vnum and hv > ts_h[-1]:
                ts_h.pop(), ts_a.pop(), ts_b.pop()
            f[3] -= 1
            f[1] = f[2]

        descended = False
        while f[1] != -1:
            it = f[1]
            f[2] = slot_nxt[it]
            e = slot_e[it]
            w = dst[e]
            wnum = newnum[w]
            if etype[e] == TREE:
                if is_start[e]:
                    lw = low1[w]
                    if ts_a[-1] > lw:
                        y = 0
                        b = 0
                        while ts_a[-1] > lw:
                            y = max(y, ts_h[-1])
                            b = ts_b[-1]
                            ts_h.pop(), ts_a.pop(), ts_b.pop()
                        ts_h.append(y), ts_a.append(lw), ts_b.append(b)
                    else:
                        ts_h.append(wnum + nd[w] - 1), ts_a.append(lw), ts_b.append(vnum)
                    ts_h.append(-1), ts_a.append(-1), ts_b.append(-1)
                f[4] = e
                f[5] = w
                frames.append([w, head[w], -1, size[w], -1, -1])
                descended = True
                break
            if is_start[e]:
                if ts_a[-1] > wnum:
                    y = 0
                    b = 0
                    while ts_a[-1] > wnum:
                        y = max(y, ts_h[-1])
                        b = ts_b[-1]
                        ts_h.pop(), ts_a.pop(), ts_b.pop()
                    ts_h.append(y), ts_a.append(wnum), ts_b.append(b)
                else:
                    ts_h.append(vnum), ts_a.append(wnum), ts_b.append(vnum)
            if w == father[v]:
                etype[e] = REMOVED
                adj_del(it)
                bond = [e]
                e_virt = make_virtual(w, v)
                bond.append(e_virt)
                eh = tree_arc[v]
                bond.append(eh)
                comps.append(["P", bond])
                tree_arc[v] = e_virt
                etype[e_virt] = TREE
                in_adj[e_virt] = in_adj[eh]
                slot_e[in_adj[eh]] = e_virt
            else:
                estack.append(e)
            f[1] = f[2]
        if not descended:
            frames.pop()

    if estack:
        comps.append(["?", estack[:]])
    return _assemble(comps, src, dst, m0), src, dst


def _classify(edges: list[int], src: list[int], dst: list[int]) -> str:
    deg: dict[int, int] = {}
    for e in edges:
        deg[src[e]] = deg.get(src[e], 0) + 1
        deg[dst[e]] = deg.get(dst[e], 0) + 1
    if len(deg) == 2:
        return "P"
    if all(d == 2 for d in deg.values()):
        return "S"
    return "R"


def _assemble(comps: list[list], src: list[int], dst: list[int], m0: int) -> list[tuple[str, list[int]]]:
    """Merge adjacent bonds with bonds and polygons with polygons."""
    kinds = [_classify(c[1], src, dst) for c in comps]
    where: dict[int, list[int]] = {}
    for ci, c in enumerate(comps):
        for e in c[1]:
            if e >= m0:
                where.setdefault(e, []).append(ci)
    parent = list(range(len(comps)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    dropped: set[int] = set()
    for e, cs in where.items():
        if len(cs) != 2:
            raise AssertionError(f"virtual edge {e} lies in {len(cs)} components")
        c1, c2 = cs
        if kinds[c1] == kinds[c2] and kinds[c1] != "R":
            dropped.add(e)
            r1, r2 = find(c1), find(c2)
            if r1 != r2:
                parent[r2] = r1
    merged: dict[int, list[int]] = {}
    order: list[int] = []
    for ci, c in enumerate(comps):
        r = find(ci)
        if r not in merged:
            merged[r] = []
            order.append(r)
        merged[r].extend(e for e in c[1] if e not in dropped)
    return [(kinds[r], merged[r]) for r in order]
