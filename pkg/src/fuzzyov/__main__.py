import sys

from fuzzyov.cli import main

sys.exit(main())
