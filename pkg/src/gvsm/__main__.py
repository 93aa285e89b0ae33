import sys

from gvsm.cli import main

sys.exit(main())
