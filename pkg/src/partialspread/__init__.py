"""Maximum partial spreads of finite projective spaces."""
