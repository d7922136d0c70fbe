# Module level variable that can be changed by the CLI or by library users.
silent_mode = True
