import sys

from ddcalc.cli import main

sys.exit(main())
