import sys

from uclinalg.cli import main

if __name__ == '__main__':
    # Unit-consistent inverse tool.  Everything after the script name is handed to the CLI.
    sys.exit(main(sys.argv[1:]))
