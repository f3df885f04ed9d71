import sys

from cuspgauge.cli import main

sys.exit(main())
