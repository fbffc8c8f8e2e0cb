from ginlex.main import main

main()
