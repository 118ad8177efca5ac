# run_branching.py
"""Headless entry point: reproduces the worked examples, then hands over to the CLI."""
import sys

from algebra.parsing import parse_element, parse_vector, render_vector
from algebra.rewriting import normal_form
from cli.app import main
from engine.branching import apply_element
from engine.models import FamilyConfig


def worked_examples() -> None:
    z1 = parse_element("ind5*res5*ind3*res3")
    print("z1 V(1,1;15) =", render_vector(apply_element(z1, parse_vector("V(1,1;15)"))))

    cfg = FamilyConfig(primes=(3, 5, 7), seeds=(1,))
    for expr in ("ind3*res5^2*res3*ind5", "res5*res7*res3*ind5*ind7*ind5", "res7*ind3*res3^2*ind7"):
        print(f"{expr} =", normal_form(parse_element(expr), cfg, "both"))


if __name__ == "__main__":
    if len(sys.argv) > 1:
        sys.exit(main(sys.argv[1:]))
    worked_examples()
