"""loewner_lab — numerical verification of reverse operator inequalities for positive linear maps."""
