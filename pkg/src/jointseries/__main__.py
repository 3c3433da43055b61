import sys

from jointseries.cli import main

sys.exit(main())
