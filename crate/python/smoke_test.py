"""Smoke test for the transring Python module.

Build and install first:  pip install --no-build-isolation ./crates/py
"""

import json

import transring


def report(text):
    r = json.loads(text)
    assert r["schema"] == "transring-report/1", r["schema"]
    return r


def main():
    r = report(transring.verify('{"kind": "poly", "field": "F2"}'))
    assert r["verdict"] == "pass", transring.render_text(json.dumps(r))

    r = report(transring.filters('{"kind": "product_of_fields", "primes": [2, 2, 3]}', "bijection"))
    assert r["verdict"] == "pass"

    r = report(transring.filters('{"kind": "product_of_fields", "primes": [3]}', "nth-root:2"))
    assert r["verdict"] == "fail"

    r = report(transring.localize('{"kind": "poly", "field": "Q"}', pairs=50))
    assert r["verdict"] == "pass"

    r = report(transring.seq("density", pairs=50, units=20))
    assert r["verdict"] == "pass"

    r = report(transring.omega('{"kind": "product_of_fields", "primes": [2, 3]}'))
    assert r["verdict"] == "pass"

    try:
        transring.verify('{"kind": "poly", "field": "F4"}')
    except ValueError as e:
        print("rejected:", e)
    else:
        raise AssertionError("prime 4 accepted")

    print(transring.render_text(transring.verify('{"kind": "poly", "field": "F3"}', bound=2)))
    print("smoke test passed")


if __name__ == "__main__":
    main()
