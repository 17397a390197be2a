"""Hot loops: attractors, SCCs and the recursive solver.

Every function here takes plain numpy arrays so it can be compiled by numba or
run unchanged by the interpreter (see ``_accel``). Conventions: ``domain`` and
``zmask`` are boolean masks, strategies are int64 arrays with ``-1`` for "no
choice", queues are preallocated int64 arrays.
"""
import numpy as np

from ._accel import jit


@jit
def attract(succ_ptr, succ, pred_ptr, pred, owner, domain, player, targets, zmask, strat):
    """Backward attractor of ``targets`` for ``player`` inside ``domain``.

    ``zmask`` must be all False on entry and receives the attractor; attracted
    player vertices get the successor that pulled them in, target vertices of
    the player get their first successor inside the attractor. Returns the
    vertices of the attractor in discovery order.
    """
    n = len(owner)
    remaining = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    head = 0
    tail = 0
    for i in range(len(targets)):
        v = targets[i]
        if not zmask[v]:
            zmask[v] = True
            queue[tail] = v
            tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(pred_ptr[u], pred_ptr[u + 1]):
            v = pred[k]
            if zmask[v] or not domain[v]:
                continue
            if owner[v] == player:
                zmask[v] = True
                strat[v] = u
                queue[tail] = v
                tail += 1
            else:
                if remaining[v] < 0:
                    c = 0
                    for e in range(succ_ptr[v], succ_ptr[v + 1]):
                        if domain[succ[e]]:
                            c += 1
                    remaining[v] = c
                remaining[v] -= 1
                if remaining[v] == 0:
                    zmask[v] = True
                    queue[tail] = v
                    tail += 1
    for i in range(len(targets)):
        v = targets[i]
        if owner[v] == player:
            strat[v] = -1
            for e in range(succ_ptr[v], succ_ptr[v + 1]):
                if zmask[succ[e]]:
                    strat[v] = succ[e]
                    break
    return queue[:tail].copy()


@jit
def tangle_attract(succ_ptr, succ, pred_ptr, pred, owner, domain, player, targets, zmask, strat,
                   t_vptr, t_verts, t_wit, t_eptr, t_escs, t_parity, t_alive, ei_ptr, ei_base, ei_head, ei_next, ei_tan):
    """Attractor that also absorbs whole tangles of ``player``.

    Tangle ``k`` owns ``t_verts[t_vptr[k]:t_vptr[k+1]]`` with witness choices
    ``t_wit`` (aligned, ``-1`` for opponent vertices) and escapes
    ``t_escs[t_eptr[k]:t_eptr[k+1]]``. The tangles of player ``a`` having
    vertex ``u`` as an escape are ``ei_base[ei_ptr[a, u]:ei_ptr[a, u+1]]``
    followed by the linked list ``ei_head``/``ei_next``/``ei_tan`` holding
    tangles added since ``ei_base`` was built. A
    tangle is absorbed when it lies inside ``domain`` and each of its escapes
    inside ``domain`` is attracted.
    """
    n = len(owner)
    scratch = (np.zeros(n, dtype=np.int64), np.zeros(n, dtype=np.int64),
               np.zeros(len(t_parity), dtype=np.int64), np.zeros(len(t_parity), dtype=np.int64),
               np.empty(n, dtype=np.int64))
    return _tangle_attract(succ_ptr, succ, pred_ptr, pred, owner, domain, player, targets, zmask, strat,
                           t_vptr, t_verts, t_wit, t_eptr, t_escs, t_parity, t_alive, ei_ptr, ei_base,
                           ei_head, ei_next, ei_tan, scratch, 1)


@jit
def _tangle_attract(succ_ptr, succ, pred_ptr, pred, owner, domain, player, targets, zmask, strat,
                    t_vptr, t_verts, t_wit, t_eptr, t_escs, t_parity, t_alive, ei_ptr, ei_base, ei_head, ei_next, ei_tan,
                    scratch, epoch):
    # counters are valid only where their stamp equals ``epoch``, so the
    # scratch arrays can be shared by successive calls without clearing
    remaining, rem_stamp, waiting, wait_stamp, queue = scratch
    head = 0
    tail = 0
    for i in range(len(targets)):
        v = targets[i]
        if not zmask[v]:
            zmask[v] = True
            queue[tail] = v
            tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(pred_ptr[u], pred_ptr[u + 1]):
            v = pred[k]
            if zmask[v] or not domain[v]:
                continue
            if owner[v] == player:
                zmask[v] = True
                strat[v] = u
                queue[tail] = v
                tail += 1
            else:
                if rem_stamp[v] != epoch:
                    rem_stamp[v] = epoch
                    c = 0
                    for e in range(succ_ptr[v], succ_ptr[v + 1]):
                        if domain[succ[e]]:
                            c += 1
                    remaining[v] = c
                remaining[v] -= 1
                if remaining[v] == 0:
                    zmask[v] = True
                    queue[tail] = v
                    tail += 1
        nb = ei_ptr[player, u + 1] - ei_ptr[player, u]
        x = ei_head[player, u]
        i = 0
        while i < nb or x >= 0:
            if i < nb:
                t = ei_base[ei_ptr[player, u] + i]
                i += 1
            else:
                t = ei_tan[x]
                x = ei_next[x]
            if not t_alive[t]:
                continue
            if wait_stamp[t] != epoch:
                # every escape in the domain is dequeued exactly once
                wait_stamp[t] = epoch
                c = -1
                for e in range(t_eptr[t], t_eptr[t + 1]):
                    if domain[t_escs[e]]:
                        c += 1
                waiting[t] = c
            else:
                waiting[t] -= 1
            if waiting[t] != 0:
                continue
            ok = True
            fresh = 0
            for e in range(t_vptr[t], t_vptr[t + 1]):
                w = t_verts[e]
                if not domain[w]:
                    ok = False
                    break
                if not zmask[w]:
                    fresh += 1
            if not ok or fresh == 0:
                continue
            # choices are fixed against the attractor before the tangle joins it
            for e in range(t_vptr[t], t_vptr[t + 1]):
                w = t_verts[e]
                if zmask[w] or owner[w] != player:
                    continue
                choice = t_wit[e]
                for f in range(succ_ptr[w], succ_ptr[w + 1]):
                    if zmask[succ[f]]:
                        choice = succ[f]
                        break
                strat[w] = choice
            for e in range(t_vptr[t], t_vptr[t + 1]):
                w = t_verts[e]
                if not zmask[w]:
                    zmask[w] = True
                    queue[tail] = w
                    tail += 1
    for i in range(len(targets)):
        v = targets[i]
        if owner[v] == player:
            strat[v] = -1
            for e in range(succ_ptr[v], succ_ptr[v + 1]):
                if zmask[succ[e]]:
                    strat[v] = succ[e]
                    break
    return queue[:tail].copy()


@jit
def scc_labels(succ_ptr, succ, mask, choice):
    """Tarjan's algorithm without recursion on the graph induced by ``mask``.

    A vertex with ``choice[v] >= 0`` only keeps its edge to ``choice[v]``; the
    others keep all successors inside ``mask``. Returns a component id per
    vertex (``-1`` outside the mask); ids follow completion order, so every
    component only reaches components with smaller ids.
    """
    n = len(mask)
    index = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    comp = np.full(n, -1, dtype=np.int64)
    on_stack = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    sp = 0
    call_v = np.empty(n, dtype=np.int64)
    call_e = np.empty(n, dtype=np.int64)
    counter = 0
    ncomp = 0
    for root in range(n):
        if not mask[root] or index[root] >= 0:
            continue
        depth = 0
        call_v[0] = root
        call_e[0] = succ_ptr[root]
        index[root] = counter
        low[root] = counter
        counter += 1
        stack[sp] = root
        sp += 1
        on_stack[root] = True
        while depth >= 0:
            v = call_v[depth]
            e = call_e[depth]
            descended = False
            while e < succ_ptr[v + 1]:
                w = succ[e]
                e += 1
                if choice[v] >= 0 and w != choice[v]:
                    continue
                if not mask[w]:
                    continue
                if index[w] < 0:
                    call_e[depth] = e
                    depth += 1
                    call_v[depth] = w
                    call_e[depth] = succ_ptr[w]
                    index[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[sp] = w
                    sp += 1
                    on_stack[w] = True
                    descended = True
                    break
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if descended:
                continue
            if low[v] == index[v]:
                while True:
                    sp -= 1
                    w = stack[sp]
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            depth -= 1
            if depth >= 0:
                u = call_v[depth]
                if low[v] < low[u]:
                    low[u] = low[v]
    return comp


@jit
def bottom_components(succ_ptr, succ, mask, choice, comp):
    """Flags, per component id, whether it is bottom and nontrivial."""
    n = len(mask)
    ncomp = 0
    for v in range(n):
        if comp[v] + 1 > ncomp:
            ncomp = comp[v] + 1
    bottom = np.ones(ncomp, dtype=np.bool_)
    cyclic = np.zeros(ncomp, dtype=np.bool_)
    size = np.zeros(ncomp, dtype=np.int64)
    for v in range(n):
        if comp[v] >= 0:
            size[comp[v]] += 1
    for v in range(n):
        if not mask[v]:
            continue
        for e in range(succ_ptr[v], succ_ptr[v + 1]):
            w = succ[e]
            if choice[v] >= 0 and w != choice[v]:
                continue
            if not mask[w]:
                continue
            if comp[w] != comp[v]:
                bottom[comp[v]] = False
            elif w == v or size[comp[v]] > 1:
                cyclic[comp[v]] = True
    return bottom & cyclic


@jit
def _attract_in_frame(succ_ptr, succ, pred_ptr, pred, owner, player, depth, dom,
                      zstamp, rstamp, remaining, stamp, queue, tail, strat):
    # queue[:tail] holds the targets, already stamped
    head = 0
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(pred_ptr[u], pred_ptr[u + 1]):
            v = pred[k]
            if zstamp[v] == stamp or dom[v] < depth:
                continue
            if owner[v] == player:
                zstamp[v] = stamp
                strat[v] = u
                queue[tail] = v
                tail += 1
            else:
                if rstamp[v] != stamp:
                    rstamp[v] = stamp
                    c = 0
                    for e in range(succ_ptr[v], succ_ptr[v + 1]):
                        if dom[succ[e]] >= depth:
                            c += 1
                    remaining[v] = c
                remaining[v] -= 1
                if remaining[v] == 0:
                    zstamp[v] = stamp
                    queue[tail] = v
                    tail += 1
    return tail


@jit
def _grow(a, need):
    if need <= len(a):
        return a
    b = np.empty(max(need, 2 * len(a)), dtype=a.dtype)
    b[:len(a)] = a
    return b


@jit
def zielonka(succ_ptr, succ, pred_ptr, pred, owner, priority, trace):
    """Recursive algorithm run on an explicit frame stack.

    Only invocations on nonempty subgames are counted. Frame
    domains are vertex lists in a shared buffer and ``dom[v]`` holds the depth
    of the deepest live frame containing ``v``, so each invocation costs time
    proportional to its own subgame. Returns ``(winner, strategy, calls,
    ev_prio, ev_ptr, ev_verts)``; with ``trace`` set, one event is recorded per
    invocation whose opponent attractor grows beyond the opponent's region,
    listing the attracted vertices of the top priority.
    """
    n = len(owner)
    winner = np.full(n, -1, dtype=np.int8)
    strat = np.full(n, -1, dtype=np.int64)
    dom = np.ones(n, dtype=np.int64)
    zstamp = np.zeros(n, dtype=np.int64)
    rstamp = np.zeros(n, dtype=np.int64)
    remaining = np.zeros(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    stamp = 0

    # frame d: domain buf[lo:mid], its A list buf[mid:hi], child domain buf[c_lo:c_hi]
    buf = np.empty(4 * n + 16, dtype=np.int64)
    f_lo = np.zeros(n + 2, dtype=np.int64)
    f_mid = np.zeros(n + 2, dtype=np.int64)
    f_hi = np.zeros(n + 2, dtype=np.int64)
    f_clo = np.zeros(n + 2, dtype=np.int64)
    f_chi = np.zeros(n + 2, dtype=np.int64)
    f_state = np.zeros(n + 2, dtype=np.int64)
    f_prio = np.zeros(n + 2, dtype=np.int64)
    f_ntarg = np.zeros(n + 2, dtype=np.int64)

    ev_prio = np.empty(16, dtype=np.int64)
    ev_ptr = np.zeros(17, dtype=np.int64)
    ev_verts = np.empty(16, dtype=np.int64)
    n_ev = 0
    n_evv = 0

    calls = 0
    for v in range(n):
        buf[v] = v
    depth = 1
    f_lo[1] = 0
    f_mid[1] = n
    f_state[1] = 0
    while depth > 0:
        lo = f_lo[depth]
        mid = f_mid[depth]
        st = f_state[depth]
        if st == 0:
            if mid == lo:
                depth -= 1
                continue
            calls += 1
            p = -1
            for i in range(lo, mid):
                if priority[buf[i]] > p:
                    p = priority[buf[i]]
            alpha = p & 1
            stamp += 1
            tail = 0
            for i in range(lo, mid):
                v = buf[i]
                if priority[v] == p:
                    zstamp[v] = stamp
                    queue[tail] = v
                    tail += 1
            ntarg = tail
            tail = _attract_in_frame(succ_ptr, succ, pred_ptr, pred, owner, alpha, depth, dom,
                                     zstamp, rstamp, remaining, stamp, queue, tail, strat)
            buf = _grow(buf, mid + tail + (mid - lo - tail))
            hi = mid + tail
            buf[mid:hi] = queue[:tail]
            c = hi
            for i in range(lo, mid):
                v = buf[i]
                if zstamp[v] != stamp:
                    buf[c] = v
                    c += 1
                    dom[v] = depth + 1
            f_prio[depth] = p
            f_ntarg[depth] = ntarg
            f_hi[depth] = hi
            f_clo[depth] = hi
            f_chi[depth] = c
            f_state[depth] = 1
            depth += 1
            f_lo[depth] = hi
            f_mid[depth] = c
            f_state[depth] = 0
        elif st == 1:
            p = f_prio[depth]
            alpha = p & 1
            opp = 1 - alpha
            hi = f_hi[depth]
            c_lo = f_clo[depth]
            c_hi = f_chi[depth]
            for i in range(c_lo, c_hi):
                dom[buf[i]] = depth
            stamp += 1
            tail = 0
            for i in range(c_lo, c_hi):
                v = buf[i]
                if winner[v] == opp:
                    zstamp[v] = stamp
                    queue[tail] = v
                    tail += 1
            nw = tail
            tail = _attract_in_frame(succ_ptr, succ, pred_ptr, pred, owner, opp, depth, dom,
                                     zstamp, rstamp, remaining, stamp, queue, tail, strat)
            if tail == nw:
                for i in range(mid, hi):
                    winner[buf[i]] = alpha
                for i in range(mid, mid + f_ntarg[depth]):
                    v = buf[i]
                    if owner[v] == alpha:
                        best = -1
                        for e in range(succ_ptr[v], succ_ptr[v + 1]):
                            w = succ[e]
                            if dom[w] >= depth and winner[w] == alpha and (best < 0 or w < best):
                                best = w
                        strat[v] = best
                depth -= 1
                continue
            if trace:
                ev_prio = _grow(ev_prio, n_ev + 1)
                ev_ptr = _grow(ev_ptr, n_ev + 2)
                for i in range(nw, tail):
                    v = queue[i]
                    if priority[v] == p:
                        ev_verts = _grow(ev_verts, n_evv + 1)
                        ev_verts[n_evv] = v
                        n_evv += 1
                ev_prio[n_ev] = p
                n_ev += 1
                ev_ptr[n_ev] = n_evv
            for i in range(tail):
                winner[queue[i]] = opp
            buf = _grow(buf, hi + mid - lo)
            c = hi
            for i in range(lo, mid):
                v = buf[i]
                if zstamp[v] != stamp:
                    buf[c] = v
                    c += 1
                    dom[v] = depth + 1
            f_clo[depth] = hi
            f_chi[depth] = c
            f_state[depth] = 2
            depth += 1
            f_lo[depth] = hi
            f_mid[depth] = c
            f_state[depth] = 0
        else:
            for i in range(f_clo[depth], f_chi[depth]):
                dom[buf[i]] = depth
            depth -= 1
    return winner, strat, calls, ev_prio[:n_ev].copy(), ev_ptr[:n_ev + 1].copy(), ev_verts[:n_evv].copy()


@jit
def losing_from(succ_ptr, succ, priority, choice, player):
    """Vertices from which the opponent of ``player`` forces a cycle it wins.

    ``choice`` fixes one successor for every vertex of ``player`` (others keep
    all edges), so the rest is a one-player graph problem: a vertex ``u`` of
    the opponent's parity is a bad cycle head when ``u`` reaches itself
    through vertices of priority at most ``pr(u)``. Every vertex that can
    reach a cycle head loses. Quadratic, meant for the brute-force oracle.
    """
    n = len(priority)
    bad = np.zeros(n, dtype=np.bool_)
    seen = np.zeros(n, dtype=np.int64)
    stack = np.empty(n + len(succ), dtype=np.int64)
    mark = 0
    for u in range(n):
        if (priority[u] & 1) == player:
            continue
        mark += 1
        top = priority[u]
        sp = 0
        stack[sp] = u
        sp += 1
        found = False
        while sp > 0 and not found:
            sp -= 1
            v = stack[sp]
            for e in range(succ_ptr[v], succ_ptr[v + 1]):
                w = succ[e]
                if choice[v] >= 0 and w != choice[v]:
                    continue
                if w == u:
                    found = True
                    break
                if priority[w] <= top and seen[w] != mark:
                    seen[w] = mark
                    stack[sp] = w
                    sp += 1
        if found:
            bad[u] = True
    # backward closure: v loses if some allowed edge leads to a losing vertex
    changed = True
    while changed:
        changed = False
        for v in range(n):
            if bad[v]:
                continue
            for e in range(succ_ptr[v], succ_ptr[v + 1]):
                w = succ[e]
                if choice[v] >= 0 and w != choice[v]:
                    continue
                if bad[w]:
                    bad[v] = True
                    changed = True
                    break
    return bad


@jit
def best_positional(succ_ptr, succ, owner, priority, player):
    """Enumerate all positional strategies of ``player``.

    Returns the union of winning sets and a strategy winning the most
    vertices; by positional determinacy that strategy wins the whole union.
    """
    n = len(priority)
    mine = np.empty(n, dtype=np.int64)
    k = 0
    for v in range(n):
        if owner[v] == player:
            mine[k] = v
            k += 1
    digit = np.zeros(k, dtype=np.int64)
    choice = np.full(n, -1, dtype=np.int64)
    for i in range(k):
        choice[mine[i]] = succ[succ_ptr[mine[i]]]
    union = np.zeros(n, dtype=np.bool_)
    best = choice.copy()
    best_size = -1
    while True:
        lose = losing_from(succ_ptr, succ, priority, choice, player)
        size = 0
        for v in range(n):
            if not lose[v]:
                union[v] = True
                size += 1
        if size > best_size:
            best_size = size
            best[:] = choice
        # advance the mixed-radix counter
        i = 0
        while i < k:
            v = mine[i]
            digit[i] += 1
            if digit[i] < succ_ptr[v + 1] - succ_ptr[v]:
                choice[v] = succ[succ_ptr[v] + digit[i]]
                break
            digit[i] = 0
            choice[v] = succ[succ_ptr[v]]
            i += 1
        if i == k:
            break
    return union, best


@jit
def tangle_search(succ_ptr, succ, pred_ptr, pred, owner, priority, domain,
                  t_vptr, t_verts, t_wit, t_eptr, t_escs, t_parity, t_alive, ei_ptr, ei_base, ei_head, ei_next, ei_tan):
    """Top-down decomposition of ``domain`` by tangle attraction.

    Every region without open vertices contributes its bottom SCCs under the
    region's attractor strategy. Returns ``(ptr, verts, strat)``: component
    ``i`` is ``verts[ptr[i]:ptr[i+1]]`` and ``strat`` holds the choices of
    every region.
    """
    n = len(owner)
    sub = domain.copy()
    order = np.argsort(-priority, kind="mergesort")
    strat = np.full(n, -1, dtype=np.int64)
    zmask = np.zeros(n, dtype=np.bool_)
    out_ptr = np.zeros(n + 1, dtype=np.int64)
    out_verts = np.empty(n, dtype=np.int64)
    found = 0
    targets = np.empty(n, dtype=np.int64)
    choice = np.full(n, -1, dtype=np.int64)
    scratch = (np.zeros(n, dtype=np.int64), np.zeros(n, dtype=np.int64),
               np.zeros(len(t_parity), dtype=np.int64), np.zeros(len(t_parity), dtype=np.int64),
               np.empty(n, dtype=np.int64))
    epoch = 0
    pos = 0
    while True:
        while pos < n and not sub[order[pos]]:
            pos += 1
        if pos == n:
            break
        p = priority[order[pos]]
        alpha = p & 1
        k = 0
        i = pos
        while i < n and priority[order[i]] == p:
            if sub[order[i]]:
                targets[k] = order[i]
                k += 1
            i += 1
        epoch += 1
        z = _tangle_attract(succ_ptr, succ, pred_ptr, pred, owner, sub, alpha, targets[:k], zmask, strat,
                            t_vptr, t_verts, t_wit, t_eptr, t_escs, t_parity, t_alive, ei_ptr, ei_base,
                            ei_head, ei_next, ei_tan, scratch, epoch)
        closed = True
        for i in range(len(z)):
            v = z[i]
            if owner[v] == alpha:
                inside = False
                for e in range(succ_ptr[v], succ_ptr[v + 1]):
                    if zmask[succ[e]]:
                        inside = True
                        break
                if not inside:
                    closed = False
                    break
            else:
                for e in range(succ_ptr[v], succ_ptr[v + 1]):
                    w = succ[e]
                    if sub[w] and not zmask[w]:
                        closed = False
                        break
                if not closed:
                    break
        if closed:
            for i in range(len(z)):
                v = z[i]
                choice[v] = strat[v] if owner[v] == alpha else -1
            comp = scc_labels(succ_ptr, succ, zmask, choice)
            keep = bottom_components(succ_ptr, succ, zmask, choice, comp)
            # emit components ordered by their smallest member
            seen = np.zeros(len(keep), dtype=np.bool_)
            for v in range(n):
                c = comp[v]
                if c < 0 or not keep[c] or seen[c]:
                    continue
                seen[c] = True
                start = out_ptr[found]
                m = start
                for w in range(v, n):
                    if comp[w] == c:
                        out_verts[m] = w
                        m += 1
                found += 1
                out_ptr[found] = m
            for i in range(len(z)):
                choice[z[i]] = -1
        for i in range(len(z)):
            v = z[i]
            zmask[v] = False
            sub[v] = False
    return out_ptr[:found + 1].copy(), out_verts[:out_ptr[found]].copy(), strat
