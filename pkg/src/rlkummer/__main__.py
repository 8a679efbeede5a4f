from rlkummer.cli import main

main()
