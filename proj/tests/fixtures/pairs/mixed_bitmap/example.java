Bitmap bitmap = BitmapFactory.decodeFile(path);
int width = bitmap.getWidth();
int height = bitmap.getHeight();
imageView.setImageBitmap(bitmap);
