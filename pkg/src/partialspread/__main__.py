import sys
from partialspread.cli import main
sys.exit(main())
