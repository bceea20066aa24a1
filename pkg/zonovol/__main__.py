import sys

from zonovol.main import main

sys.exit(main())
