from z4group.cli import main

raise SystemExit(main())
