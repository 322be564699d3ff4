"""Smoke test for the hanoi_trees_py extension module."""

import hanoi_trees_py as ht


def main():
    assert ht.parse_position("2LR") == (2, [0, 1])
    assert ht.parse_position("3.2.0", m=3) == (3, [2, 0])
    assert ht.format_position(1, [1, 0]) == "1RL"

    config = ht.Configuration(2, 2, 4, [(1, 2)])
    assert config.node_count() == 3
    assert ("1L", "2") in config.legal_moves()
    moved = config.apply_move("1L", "2")
    assert moved.layout() is None
    try:
        moved.apply_move("1R", "2L")
    except ValueError as e:
        assert str(e).startswith("SizeViolation"), e
    else:
        raise AssertionError("equal sizes must not stack")

    assert ht.count_t(3) == 21
    assert ht.count_fgh(3) == (19, 33, 47)
    assert ht.count_f_closed(64) == ht.count_fgh(64)[0]
    assert ht.count_fgh(64)[0] > 2**64

    f3 = ht.solve("f", 3)
    assert len(f3) == 19
    assert ht.check_trace(f3) == (True, None)
    accepted, reason = ht.check_ancestor(f3)
    assert not accepted and reason.startswith("step ")
    assert ht.check_ancestor(ht.solve("t", 3)) == (True, None)
    assert len(ht.solve("mary", 4, m=1)) == 15

    again = ht.Trace.from_jsonl(f3.to_jsonl())
    assert again.moves() == f3.moves()

    count, witness = ht.shortest("g", 2)
    assert count == 9 and len(witness) == 9
    assert ht.check_trace(witness) == (True, None)
    assert ht.shortest("f", 3, restricted=True)[0] == 21
    try:
        ht.shortest("f", 3, memory_mb=0)
    except MemoryError:
        pass
    else:
        raise AssertionError("budget should be exceeded")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
