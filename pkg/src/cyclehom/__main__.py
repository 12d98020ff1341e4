from cyclehom.cli import main

raise SystemExit(main())
