#!/usr/bin/env python3
"""
Quick Start Guide for Singulator
"""

import sys

from singulator import Singulator
from singulator.errors import SingulatorError


def quick_example():
    """Compute the invariants of one plane curve singularity"""

    print("""
╔════════════════════════════════════════════╗
║      SINGULATOR - Quick Start Example      ║
╚════════════════════════════════════════════╝
    """)

    if len(sys.argv) > 1:
        text = sys.argv[1]
    else:
        text = "x^3 + y^4"
        print("💡 Tip: You can pass a polynomial as argument")
        print(f"   Using the E6 singularity: {text}\n")

    sing = Singulator({'lefschetz_cap': 12})

    try:
        f = sing.parse(text)
        print(f"🔍 Parsed: {f}  (variables {', '.join(f.variables)})")
        report = sing.invariants(f)

        print("\n📈 Invariants:")
        print(f"  ├─ Milnor number: {report['mu']}")
        print(f"  ├─ Multiplicity: {report['nu']}")
        print(f"  └─ Log canonical threshold: {report['lct']}")

        if f.nvars == 2:
            fiber = report['fiber']
            print("\n🔁 Monodromy:")
            print(f"  ├─ Lefschetz numbers: {report['lefschetz']}")
            print(f"  ├─ Zeta exponents: {report['zeta']}")
            print(f"  └─ Milnor fiber: genus {fiber['genus']}, {fiber['branches']} boundary circle(s)")

            tree, page = sing.spectral_page(f, report['nu'])
            print(f"\n📐 First nonzero E1 page (m = {report['nu']}):")
            for (p, q), rank in page.entries:
                print(f"  • E1^({p},{q}) rank {rank}")

            print(f"\n📏 lct from Floer degrees: {sing.floer_lct(f)}")

    except SingulatorError as e:
        print(f"❌ Error: {e}")
        sys.exit(e.exit_code)

    print("\n" + "=" * 50)
    print("For more information, run: singulator --help")
    print("=" * 50)


if __name__ == "__main__":
    quick_example()
