import sys

from tropopt.cli import main

sys.exit(main())
