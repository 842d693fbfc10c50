// placeholder, tests pending
