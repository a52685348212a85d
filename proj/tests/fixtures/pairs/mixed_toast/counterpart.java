String text = context.getString(R.string.hello);
textView.setText(text);
