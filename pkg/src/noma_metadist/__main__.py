"""Allow ``python -m noma_metadist``."""

import sys

from noma_metadist.cli import main

sys.exit(main())
