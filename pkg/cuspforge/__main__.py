import sys

from cuspforge.main import main

sys.exit(main())
