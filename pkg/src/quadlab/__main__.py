import sys

from quadlab.cli import main

sys.exit(main())
