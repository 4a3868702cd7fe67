from hyperzeta.cli import entry_point

entry_point()
