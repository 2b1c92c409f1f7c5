import os
import pathlib

from dotenv import load_dotenv

load_dotenv(pathlib.Path(os.getcwd()) / '.env')  # before chebpart.config reads the environment

from chebpart.cli import main  # noqa: E402

main()
