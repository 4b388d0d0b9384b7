from trioid_lab.cli import main

main()
