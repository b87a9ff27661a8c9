from qhopf.api.cli import main

main()
