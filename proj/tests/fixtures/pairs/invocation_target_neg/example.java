String s = format(value);
